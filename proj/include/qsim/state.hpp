#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qsim {

using cd = std::complex<double>;

/// Column-major-free 2x2 complex matrix: m[r][c].
using Mat2 = std::array<std::array<cd, 2>, 2>;

Mat2 adjoint(const Mat2& u);
Mat2 matmul(const Mat2& a, const Mat2& b);

/// Principal square root of a 2x2 unitary (normal matrix, eigenvalues on the
/// unit circle). sqrt(U) * sqrt(U) == U to machine precision.
Mat2 sqrt_unitary(const Mat2& u);

Mat2 ry_matrix(double theta);
Mat2 x_matrix();

/// Dense statevector over m qubits, 2^m complex amplitudes. Qubit 0 is the
/// least-significant bit of the basis index throughout this codebase.
///
/// Amplitude-update loops go data-parallel (OpenMP) once the vector is large
/// enough to pay for the fork; below the threshold they run serially. Either
/// path writes each amplitude exactly once per gate, so results are
/// bit-identical regardless of thread count.
class StateVector {
public:
    explicit StateVector(int num_qubits);
    static StateVector from_amplitudes(int num_qubits, std::vector<cd> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const cd> amplitudes() const { return amps_; }
    cd amplitude(std::size_t basis_index) const { return amps_[basis_index]; }
    double norm() const;

    void apply_h(int target);
    void apply_x(int target);
    void apply_ry(double theta, int target);
    void apply_1q(const Mat2& u, int target);

    void apply_cx(int control, int target);
    void apply_controlled_1q(const Mat2& u, int control, int target);

    /// exp(-i theta/2 X(a) X(b))
    void apply_xx(double theta, int qubit_a, int qubit_b);
    /// exp(-i theta/2 Z(a) Z(b))
    void apply_zz(double theta, int qubit_a, int qubit_b);

    /// Applies u to `target` on the basis states where every control bit is 1
    /// (direct masked update, no decomposition).
    void apply_multi_controlled_1q(const Mat2& u, std::span<const int> controls, int target);

    /// <Z_q> = sum over basis of |amp|^2 * (+1 if bit q is 0 else -1).
    double expectation_z(int qubit) const;

    /// Appends `count` qubits in |0> above the current ones.
    void extend_with_zeros(int count);

private:
    void check_qubit(int q) const;

    int num_qubits_ = 0;
    std::vector<cd> amps_;
};

}  // namespace qsim

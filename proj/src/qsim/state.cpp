#include "qsim/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qsim {

namespace {

// Below this dimension the OpenMP fork costs more than the loop; the
// kernels then run the plain serial branch (QNN-scale states are tiny and
// gradient batches already parallelize one level up).
constexpr std::size_t kParallelDim = std::size_t{1} << 14;

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

// Runs body(i) for i in [0, count), forking only when the state is large.
template <typename Body>
inline void parallel_indices(std::int64_t count, bool parallel, Body&& body) {
    if (parallel) {
#pragma omp parallel for
        for (std::int64_t i = 0; i < count; ++i) body(i);
    } else {
        for (std::int64_t i = 0; i < count; ++i) body(i);
    }
}

}  // namespace

Mat2 adjoint(const Mat2& u) {
    return {{{std::conj(u[0][0]), std::conj(u[1][0])}, {std::conj(u[0][1]), std::conj(u[1][1])}}};
}

Mat2 matmul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return r;
}

Mat2 sqrt_unitary(const Mat2& u) {
    const cd trace = u[0][0] + u[1][1];
    const cd det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    const cd disc = std::sqrt(trace * trace - 4.0 * det);
    const cd l1 = (trace + disc) / 2.0;
    const cd l2 = (trace - disc) / 2.0;

    // A unitary with a double eigenvalue is scalar.
    if (std::abs(l1 - l2) < 1e-14) {
        const cd s = std::sqrt(l1);
        return {{{s, 0.0}, {0.0, s}}};
    }

    // Eigenvector for l1: pick the better-conditioned column of (U - l1 I).
    cd v0, v1;
    if (std::abs(u[0][1]) >= std::abs(u[1][0])) {
        v0 = u[0][1];
        v1 = l1 - u[0][0];
    } else {
        v0 = l1 - u[1][1];
        v1 = u[1][0];
    }
    const double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
    if (nrm == 0.0) throw std::invalid_argument("sqrt_unitary: degenerate eigenvector");
    v0 /= nrm;
    v1 /= nrm;

    // Normal matrix: the second eigenvector is the orthogonal complement.
    const cd w0 = -std::conj(v1);
    const cd w1 = std::conj(v0);

    const cd s1 = std::sqrt(l1);
    const cd s2 = std::sqrt(l2);

    // P diag(s1, s2) P^dagger with P = [v w].
    Mat2 r;
    r[0][0] = s1 * v0 * std::conj(v0) + s2 * w0 * std::conj(w0);
    r[0][1] = s1 * v0 * std::conj(v1) + s2 * w0 * std::conj(w1);
    r[1][0] = s1 * v1 * std::conj(v0) + s2 * w1 * std::conj(w0);
    r[1][1] = s1 * v1 * std::conj(v1) + s2 * w1 * std::conj(w1);
    return r;
}

Mat2 ry_matrix(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {{{cd(c, 0.0), cd(-s, 0.0)}, {cd(s, 0.0), cd(c, 0.0)}}};
}

Mat2 x_matrix() { return {{{cd(0.0, 0.0), cd(1.0, 0.0)}, {cd(1.0, 0.0), cd(0.0, 0.0)}}}; }

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > 30) {
        throw std::invalid_argument("StateVector: qubit count out of range [0, 30]");
    }
    amps_.assign(std::size_t{1} << num_qubits, cd(0.0, 0.0));
    amps_[0] = cd(1.0, 0.0);
}

StateVector StateVector::from_amplitudes(int num_qubits, std::vector<cd> amplitudes) {
    StateVector s(num_qubits);
    if (amplitudes.size() != s.dim()) {
        throw std::invalid_argument("StateVector: amplitude count must be 2^num_qubits");
    }
    s.amps_ = std::move(amplitudes);
    return s;
}

double StateVector::norm() const {
    double total = 0.0;
    for (const cd& a : amps_) total += std::norm(a);
    return std::sqrt(total);
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_) throw std::out_of_range("StateVector: qubit index out of range");
}

void StateVector::apply_1q(const Mat2& u, int target) {
    check_qubit(target);
    const std::int64_t mask = std::int64_t{1} << target;
    const std::int64_t lo_mask = mask - 1;
    const std::int64_t hi_mask = ~lo_mask;
    cd* amps = amps_.data();
    const cd u00 = u[0][0], u01 = u[0][1], u10 = u[1][0], u11 = u[1][1];

    parallel_indices(std::int64_t{1} << (num_qubits_ - 1), dim() >= kParallelDim, [=](std::int64_t i) {
        const std::int64_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
        const std::int64_t i1 = i0 | mask;
        const cd a0 = amps[i0];
        const cd a1 = amps[i1];
        amps[i0] = u00 * a0 + u01 * a1;
        amps[i1] = u10 * a0 + u11 * a1;
    });
}

void StateVector::apply_h(int target) {
    static const Mat2 h = {{{cd(kInvSqrt2, 0.0), cd(kInvSqrt2, 0.0)}, {cd(kInvSqrt2, 0.0), cd(-kInvSqrt2, 0.0)}}};
    apply_1q(h, target);
}

void StateVector::apply_x(int target) {
    check_qubit(target);
    const std::int64_t mask = std::int64_t{1} << target;
    const std::int64_t lo_mask = mask - 1;
    const std::int64_t hi_mask = ~lo_mask;
    cd* amps = amps_.data();

    parallel_indices(std::int64_t{1} << (num_qubits_ - 1), dim() >= kParallelDim, [=](std::int64_t i) {
        const std::int64_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
        const std::int64_t i1 = i0 | mask;
        std::swap(amps[i0], amps[i1]);
    });
}

void StateVector::apply_ry(double theta, int target) { apply_1q(ry_matrix(theta), target); }

void StateVector::apply_cx(int control, int target) { apply_controlled_1q(x_matrix(), control, target); }

void StateVector::apply_controlled_1q(const Mat2& u, int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("controlled gate: control equals target");
    const std::int64_t cmask = std::int64_t{1} << control;
    const std::int64_t tmask = std::int64_t{1} << target;
    cd* amps = amps_.data();
    const cd u00 = u[0][0], u01 = u[0][1], u10 = u[1][0], u11 = u[1][1];

    // Basis states with control=1, target=0; the partner sets the target bit.
    parallel_indices(static_cast<std::int64_t>(dim()), dim() >= kParallelDim, [=](std::int64_t i) {
        if ((i & cmask) && !(i & tmask)) {
            const std::int64_t j = i | tmask;
            const cd a0 = amps[i];
            const cd a1 = amps[j];
            amps[i] = u00 * a0 + u01 * a1;
            amps[j] = u10 * a0 + u11 * a1;
        }
    });
}

void StateVector::apply_xx(double theta, int qubit_a, int qubit_b) {
    check_qubit(qubit_a);
    check_qubit(qubit_b);
    if (qubit_a == qubit_b) throw std::invalid_argument("apply_xx: qubits coincide");
    const std::int64_t amask = std::int64_t{1} << qubit_a;
    const std::int64_t both = amask | (std::int64_t{1} << qubit_b);
    const std::int64_t lo_mask = amask - 1;
    const std::int64_t hi_mask = ~lo_mask;
    const cd c(std::cos(theta / 2.0), 0.0);
    const cd ms(0.0, -std::sin(theta / 2.0));
    cd* amps = amps_.data();

    // X(a)X(b) pairs each basis state with the one differing in both bits;
    // enumerating indices with bit a = 0 visits every pair once.
    parallel_indices(std::int64_t{1} << (num_qubits_ - 1), dim() >= kParallelDim, [=](std::int64_t i) {
        const std::int64_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
        const std::int64_t i1 = i0 ^ both;
        const cd a0 = amps[i0];
        const cd a1 = amps[i1];
        amps[i0] = c * a0 + ms * a1;
        amps[i1] = c * a1 + ms * a0;
    });
}

void StateVector::apply_zz(double theta, int qubit_a, int qubit_b) {
    check_qubit(qubit_a);
    check_qubit(qubit_b);
    if (qubit_a == qubit_b) throw std::invalid_argument("apply_zz: qubits coincide");
    const std::int64_t amask = std::int64_t{1} << qubit_a;
    const std::int64_t bmask = std::int64_t{1} << qubit_b;
    const cd phase_same(std::cos(theta / 2.0), -std::sin(theta / 2.0));
    const cd phase_diff = std::conj(phase_same);
    cd* amps = amps_.data();

    parallel_indices(static_cast<std::int64_t>(dim()), dim() >= kParallelDim, [=](std::int64_t i) {
        const bool equal_bits = ((i & amask) != 0) == ((i & bmask) != 0);
        amps[i] *= equal_bits ? phase_same : phase_diff;
    });
}

void StateVector::apply_multi_controlled_1q(const Mat2& u, std::span<const int> controls, int target) {
    check_qubit(target);
    std::int64_t cmask = 0;
    for (int c : controls) {
        check_qubit(c);
        if (c == target) throw std::invalid_argument("multi-controlled gate: control equals target");
        const std::int64_t bit = std::int64_t{1} << c;
        if (cmask & bit) throw std::invalid_argument("multi-controlled gate: duplicate control");
        cmask |= bit;
    }
    const std::int64_t tmask = std::int64_t{1} << target;
    cd* amps = amps_.data();
    const cd u00 = u[0][0], u01 = u[0][1], u10 = u[1][0], u11 = u[1][1];

    parallel_indices(static_cast<std::int64_t>(dim()), dim() >= kParallelDim, [=](std::int64_t i) {
        if (((i & cmask) == cmask) && !(i & tmask)) {
            const std::int64_t j = i | tmask;
            const cd a0 = amps[i];
            const cd a1 = amps[j];
            amps[i] = u00 * a0 + u01 * a1;
            amps[j] = u10 * a0 + u11 * a1;
        }
    });
}

double StateVector::expectation_z(int qubit) const {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    double value = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const double p = std::norm(amps_[i]);
        value += (i & mask) ? -p : p;
    }
    return value;
}

void StateVector::extend_with_zeros(int count) {
    if (count < 0) throw std::invalid_argument("extend_with_zeros: negative count");
    if (num_qubits_ + count > 30) throw std::invalid_argument("extend_with_zeros: qubit count out of range");
    num_qubits_ += count;
    amps_.resize(std::size_t{1} << num_qubits_, cd(0.0, 0.0));
}

}  // namespace qsim

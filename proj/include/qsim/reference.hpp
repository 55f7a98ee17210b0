#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qsim/state.hpp"

namespace qsim::ref {

/// Serial reference path: gates are expanded to dense 2^k x 2^k matrices and
/// applied by explicit gather/scatter, with no bit tricks and no threading.
/// Deliberately naive; the fast kernels in StateVector are tested against it
/// and benchmarked against it.

/// Applies a dense matrix over the listed qubits (qubits[0] indexes the
/// least-significant bit of the matrix's row/column space).
void apply_dense(std::vector<cd>& amplitudes, std::span<const cd> matrix, std::span<const int> qubits);

/// Dense 4x4 two-qubit matrices, row/column space ordered (qubit_b, qubit_a).
std::vector<cd> xx_matrix(double theta);
std::vector<cd> zz_matrix(double theta);

/// Dense (2^(k+1))^2 matrix for u on the target controlled by k qubits;
/// qubit order in the matrix space is (controls..., target) from least to
/// most significant... see implementation for the exact layout used by
/// controlled_apply below.
std::vector<cd> controlled_matrix(const Mat2& u, int num_controls);

/// Applies u to `target` iff all `controls` are 1, via the dense
/// controlled_matrix expansion.
void apply_multi_controlled(std::vector<cd>& amplitudes, const Mat2& u, std::span<const int> controls,
                            int target);

}  // namespace qsim::ref

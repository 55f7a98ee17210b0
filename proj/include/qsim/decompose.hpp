#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/state.hpp"

namespace qsim {

/// Rewrites a k-controlled single-qubit unitary into singly-controlled
/// two-qubit gates by the square-root recursion
///
///   C^k(U) = C_{c_k}(V) . C^{k-1}(X on c_k) . C_{c_k}(V†)
///            . C^{k-1}(X on c_k) . C^{k-1}(V on target),  V^2 = U,
///
/// with C^1 emitted directly. Every returned op is a CU gate.
std::vector<GateOp> decompose_multi_controlled(const Mat2& u, std::span<const int> controls, int target);

/// Number of CU gates the recursion above emits for `num_controls` >= 1
/// controls: T(k) = 3 T(k-1) + 2 with T(1) = 1, i.e. 2 * 3^(k-1) - 1.
std::uint64_t decomposition_gate_count(int num_controls);

}  // namespace qsim

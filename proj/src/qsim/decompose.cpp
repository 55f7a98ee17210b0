#include "qsim/decompose.hpp"

#include <stdexcept>

namespace qsim {

namespace {

void emit(const Mat2& u, std::span<const int> controls, int target, std::vector<GateOp>& out) {
    if (controls.size() == 1) {
        out.push_back(GateOp::cu(u, controls[0], target));
        return;
    }
    const Mat2 v = sqrt_unitary(u);
    const Mat2 v_dag = adjoint(v);
    const int last = controls.back();
    const std::span<const int> rest = controls.first(controls.size() - 1);

    out.push_back(GateOp::cu(v, last, target));
    emit(x_matrix(), rest, last, out);
    out.push_back(GateOp::cu(v_dag, last, target));
    emit(x_matrix(), rest, last, out);
    emit(v, rest, target, out);
}

}  // namespace

std::vector<GateOp> decompose_multi_controlled(const Mat2& u, std::span<const int> controls, int target) {
    if (controls.empty()) throw std::invalid_argument("decompose_multi_controlled: needs at least one control");
    std::vector<GateOp> out;
    out.reserve(static_cast<std::size_t>(decomposition_gate_count(static_cast<int>(controls.size()))));
    emit(u, controls, target, out);
    return out;
}

std::uint64_t decomposition_gate_count(int num_controls) {
    if (num_controls < 1) throw std::invalid_argument("decomposition_gate_count: needs at least one control");
    std::uint64_t count = 1;
    for (int i = 1; i < num_controls; ++i) count = 3 * count + 2;
    return count;
}

}  // namespace qsim

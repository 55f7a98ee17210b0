#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qsim/state.hpp"

namespace qsim {

enum class GateKind { H, X, RY, CX, XX, ZZ, MCRY, CU };

/// One circuit operation. Index semantics per kind:
///   H/X/RY:  qubits = {target}
///   CX/CU:   qubits = {control, target}
///   XX/ZZ:   qubits = {a, b}
///   MCRY:    qubits = {controls..., target}
/// `theta` is used by RY/XX/ZZ/MCRY; `matrix` only by CU.
struct GateOp {
    GateKind kind = GateKind::H;
    double theta = 0.0;
    std::vector<int> qubits;
    Mat2 matrix{};

    static GateOp h(int q) { return {GateKind::H, 0.0, {q}, {}}; }
    static GateOp x(int q) { return {GateKind::X, 0.0, {q}, {}}; }
    static GateOp ry(double theta, int q) { return {GateKind::RY, theta, {q}, {}}; }
    static GateOp cx(int control, int target) { return {GateKind::CX, 0.0, {control, target}, {}}; }
    static GateOp xx(double theta, int a, int b) { return {GateKind::XX, theta, {a, b}, {}}; }
    static GateOp zz(double theta, int a, int b) { return {GateKind::ZZ, theta, {a, b}, {}}; }
    static GateOp mcry(double theta, std::vector<int> controls, int target);
    static GateOp cu(const Mat2& u, int control, int target) { return {GateKind::CU, 0.0, {control, target}, u}; }

    /// Throws when indices repeat or fall outside [0, num_qubits).
    void validate(int num_qubits) const;
};

void apply(StateVector& state, const GateOp& op);

struct CircuitProgram {
    int qubits = 0;
    std::vector<GateOp> ops;

    void validate() const;

    /// Runs the program on |0...0>.
    StateVector simulate() const;

    /// Runs the program on an existing state (dimensions must match).
    void run(StateVector& state) const;
};

// Text form, one op per line: `H 3`, `X 2`, `RY <theta> 0`, `CX 0 1`,
// `XX <theta> 2 5`, `ZZ <theta> 2 5`, `MCRY <theta> c... t`,
// `CU c t <8 floats: re/im row-major>`. A `qubits <m>` header line is
// emitted first and required on parse.
void dump_circuit(std::ostream& out, const CircuitProgram& program);
std::string dump_circuit(const CircuitProgram& program);
CircuitProgram parse_circuit(std::istream& in);
CircuitProgram parse_circuit(const std::string& text);

}  // namespace qsim

#include "qsim/circuit.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace qsim {

GateOp GateOp::mcry(double theta, std::vector<int> controls, int target) {
    GateOp op;
    op.kind = GateKind::MCRY;
    op.theta = theta;
    op.qubits = std::move(controls);
    op.qubits.push_back(target);
    return op;
}

void GateOp::validate(int num_qubits) const {
    std::size_t expected = 0;
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::RY:
            expected = 1;
            break;
        case GateKind::CX:
        case GateKind::XX:
        case GateKind::ZZ:
        case GateKind::CU:
            expected = 2;
            break;
        case GateKind::MCRY:
            if (qubits.size() < 2) throw std::invalid_argument("GateOp: MCRY needs at least one control");
            expected = qubits.size();
            break;
    }
    if (qubits.size() != expected) throw std::invalid_argument("GateOp: wrong operand count");
    std::set<int> seen;
    for (int q : qubits) {
        if (q < 0 || q >= num_qubits) throw std::out_of_range("GateOp: qubit index out of range");
        if (!seen.insert(q).second) throw std::invalid_argument("GateOp: repeated qubit index");
    }
    if (!std::isfinite(theta)) throw std::invalid_argument("GateOp: non-finite angle");
}

void apply(StateVector& state, const GateOp& op) {
    op.validate(state.num_qubits());
    switch (op.kind) {
        case GateKind::H:
            state.apply_h(op.qubits[0]);
            break;
        case GateKind::X:
            state.apply_x(op.qubits[0]);
            break;
        case GateKind::RY:
            state.apply_ry(op.theta, op.qubits[0]);
            break;
        case GateKind::CX:
            state.apply_cx(op.qubits[0], op.qubits[1]);
            break;
        case GateKind::XX:
            state.apply_xx(op.theta, op.qubits[0], op.qubits[1]);
            break;
        case GateKind::ZZ:
            state.apply_zz(op.theta, op.qubits[0], op.qubits[1]);
            break;
        case GateKind::MCRY: {
            std::span<const int> controls(op.qubits.data(), op.qubits.size() - 1);
            state.apply_multi_controlled_1q(ry_matrix(op.theta), controls, op.qubits.back());
            break;
        }
        case GateKind::CU:
            state.apply_controlled_1q(op.matrix, op.qubits[0], op.qubits[1]);
            break;
    }
}

void CircuitProgram::validate() const {
    if (qubits < 0) throw std::invalid_argument("CircuitProgram: negative qubit count");
    for (const GateOp& op : ops) op.validate(qubits);
}

StateVector CircuitProgram::simulate() const {
    StateVector state(qubits);
    run(state);
    return state;
}

void CircuitProgram::run(StateVector& state) const {
    if (state.num_qubits() != qubits) {
        throw std::invalid_argument("CircuitProgram::run: state qubit count mismatch");
    }
    for (const GateOp& op : ops) apply(state, op);
}

void dump_circuit(std::ostream& out, const CircuitProgram& program) {
    out.precision(17);
    out << "qubits " << program.qubits << "\n";
    for (const GateOp& op : program.ops) {
        switch (op.kind) {
            case GateKind::H:
                out << "H " << op.qubits[0] << "\n";
                break;
            case GateKind::X:
                out << "X " << op.qubits[0] << "\n";
                break;
            case GateKind::RY:
                out << "RY " << op.theta << " " << op.qubits[0] << "\n";
                break;
            case GateKind::CX:
                out << "CX " << op.qubits[0] << " " << op.qubits[1] << "\n";
                break;
            case GateKind::XX:
                out << "XX " << op.theta << " " << op.qubits[0] << " " << op.qubits[1] << "\n";
                break;
            case GateKind::ZZ:
                out << "ZZ " << op.theta << " " << op.qubits[0] << " " << op.qubits[1] << "\n";
                break;
            case GateKind::MCRY: {
                out << "MCRY " << op.theta;
                for (int q : op.qubits) out << " " << q;
                out << "\n";
                break;
            }
            case GateKind::CU: {
                out << "CU " << op.qubits[0] << " " << op.qubits[1];
                for (int r = 0; r < 2; ++r) {
                    for (int c = 0; c < 2; ++c) {
                        out << " " << op.matrix[r][c].real() << " " << op.matrix[r][c].imag();
                    }
                }
                out << "\n";
                break;
            }
        }
    }
}

std::string dump_circuit(const CircuitProgram& program) {
    std::ostringstream out;
    dump_circuit(out, program);
    return out.str();
}

CircuitProgram parse_circuit(std::istream& in) {
    CircuitProgram program;
    bool have_header = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        const auto fail = [&](const char* what) -> std::runtime_error {
            return std::runtime_error("circuit line " + std::to_string(lineno) + ": " + what);
        };
        if (tag == "qubits") {
            if (!(ls >> program.qubits) || program.qubits < 0) throw fail("bad qubit count");
            have_header = true;
            continue;
        }
        if (!have_header) throw std::runtime_error("circuit file: missing 'qubits' header");
        GateOp op;
        if (tag == "H" || tag == "X") {
            int q;
            if (!(ls >> q)) throw fail("bad target");
            op = (tag == "H") ? GateOp::h(q) : GateOp::x(q);
        } else if (tag == "RY") {
            double theta;
            int q;
            if (!(ls >> theta >> q)) throw fail("bad RY");
            op = GateOp::ry(theta, q);
        } else if (tag == "CX") {
            int c, t;
            if (!(ls >> c >> t)) throw fail("bad CX");
            op = GateOp::cx(c, t);
        } else if (tag == "XX" || tag == "ZZ") {
            double theta;
            int a, b;
            if (!(ls >> theta >> a >> b)) throw fail("bad two-qubit rotation");
            op = (tag == "XX") ? GateOp::xx(theta, a, b) : GateOp::zz(theta, a, b);
        } else if (tag == "MCRY") {
            double theta;
            if (!(ls >> theta)) throw fail("bad MCRY angle");
            std::vector<int> idx;
            int q;
            while (ls >> q) idx.push_back(q);
            if (idx.size() < 2) throw fail("MCRY needs at least one control and a target");
            const int target = idx.back();
            idx.pop_back();
            op = GateOp::mcry(theta, std::move(idx), target);
        } else if (tag == "CU") {
            int c, t;
            if (!(ls >> c >> t)) throw fail("bad CU operands");
            Mat2 u;
            for (int r = 0; r < 2; ++r) {
                for (int col = 0; col < 2; ++col) {
                    double re, im;
                    if (!(ls >> re >> im)) throw fail("bad CU matrix");
                    u[r][col] = cd(re, im);
                }
            }
            op = GateOp::cu(u, c, t);
        } else {
            throw fail("unknown gate");
        }
        op.validate(program.qubits);
        program.ops.push_back(std::move(op));
    }
    if (!have_header) throw std::runtime_error("circuit file: missing 'qubits' header");
    return program;
}

CircuitProgram parse_circuit(const std::string& text) {
    std::istringstream in(text);
    return parse_circuit(in);
}

}  // namespace qsim

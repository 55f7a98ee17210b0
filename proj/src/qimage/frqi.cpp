#include "qimage/frqi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qimage {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

}  // namespace

std::vector<double> angle_field(const BinaryImage& img) {
    img.validate();
    std::vector<double> theta(img.bits.size());
    for (std::size_t q = 0; q < img.bits.size(); ++q) {
        theta[q] = img.bits[q] ? kHalfPi : 0.0;
    }
    return theta;
}

int frqi_qubit_count(const BinaryImage& img) { return 2 * img.n() + 1; }

qsim::StateVector frqi_state(const BinaryImage& img) {
    const int n = img.n();
    img.validate();
    const auto theta = angle_field(img);
    const std::size_t positions = img.bits.size();  // 4^n
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << n);

    std::vector<qsim::cd> amps(positions * 2, qsim::cd(0.0, 0.0));
    for (std::size_t q = 0; q < positions; ++q) {
        amps[q] = qsim::cd(std::cos(theta[q]) * scale, 0.0);
        amps[q + positions] = qsim::cd(std::sin(theta[q]) * scale, 0.0);
    }
    return qsim::StateVector::from_amplitudes(2 * n + 1, std::move(amps));
}

double compressed_angle(int color_bit, int high_bit, int low_bit) {
    for (int b : {color_bit, high_bit, low_bit}) {
        if (b != 0 && b != 1) throw std::invalid_argument("compressed_angle: bits must be 0 or 1");
    }
    return kHalfPi * (color_bit + high_bit / 2.0 + low_bit / 4.0);
}

int compressed_qubit_count(const BinaryImage& img) {
    const int n = img.n();
    if (n < 2) throw std::invalid_argument("compressed encoding: image must be at least 4x4");
    return 2 * n - 1;  // (2n - 2) position qubits + color
}

namespace {

// Folded color vector (sum of the four sub-position unit vectors) for one
// retained prefix. Never the zero vector: all folded angles lie in
// [0, 7*pi/8], strictly inside a half-plane.
void folded_sum(const BinaryImage& img, std::size_t prefix, double& cos_sum, double& sin_sum) {
    cos_sum = 0.0;
    sin_sum = 0.0;
    for (int t = 0; t < 4; ++t) {
        const std::size_t q = prefix * 4 + static_cast<std::size_t>(t);
        const double angle = compressed_angle(img.bits[q], (t >> 1) & 1, t & 1);
        cos_sum += std::cos(angle);
        sin_sum += std::sin(angle);
    }
}

}  // namespace

double compressed_prefix_angle(const BinaryImage& img, std::size_t prefix) {
    double cs, sn;
    folded_sum(img, prefix, cs, sn);
    return std::atan2(sn, cs);
}

qsim::StateVector compressed_state(const BinaryImage& img) {
    img.validate();
    const int qubits = compressed_qubit_count(img);
    const std::size_t prefixes = img.bits.size() / 4;  // 4^(n-1)
    const double scale = 1.0 / std::sqrt(static_cast<double>(prefixes));

    std::vector<qsim::cd> amps(prefixes * 2, qsim::cd(0.0, 0.0));
    for (std::size_t p = 0; p < prefixes; ++p) {
        double cs, sn;
        folded_sum(img, p, cs, sn);
        const double nrm = std::sqrt(cs * cs + sn * sn);
        amps[p] = qsim::cd(cs / nrm * scale, 0.0);
        amps[p + prefixes] = qsim::cd(sn / nrm * scale, 0.0);
    }
    return qsim::StateVector::from_amplitudes(qubits, std::move(amps));
}

namespace {

qsim::CircuitProgram synthesize(int position_qubits, const std::vector<double>& rotation_angles) {
    qsim::CircuitProgram program;
    program.qubits = position_qubits + 1;
    const int color = position_qubits;

    for (int q = 0; q < position_qubits; ++q) program.ops.push_back(qsim::GateOp::h(q));

    std::vector<int> controls(static_cast<std::size_t>(position_qubits));
    for (int q = 0; q < position_qubits; ++q) controls[static_cast<std::size_t>(q)] = q;

    for (std::size_t pos = 0; pos < rotation_angles.size(); ++pos) {
        const double angle = rotation_angles[pos];
        if (angle == 0.0) continue;
        if (position_qubits == 0) {
            program.ops.push_back(qsim::GateOp::ry(2.0 * angle, color));
            continue;
        }
        // X-conjugation selects |pos> as the all-ones control pattern.
        for (int q = 0; q < position_qubits; ++q) {
            if (!((pos >> q) & 1)) program.ops.push_back(qsim::GateOp::x(q));
        }
        program.ops.push_back(qsim::GateOp::mcry(2.0 * angle, controls, color));
        for (int q = 0; q < position_qubits; ++q) {
            if (!((pos >> q) & 1)) program.ops.push_back(qsim::GateOp::x(q));
        }
    }
    return program;
}

}  // namespace

qsim::CircuitProgram encode_circuit(const BinaryImage& img, bool compressed) {
    img.validate();
    if (!compressed) {
        return synthesize(2 * img.n(), angle_field(img));
    }
    const int position_qubits = compressed_qubit_count(img) - 1;
    const std::size_t prefixes = img.bits.size() / 4;
    std::vector<double> angles(prefixes);
    for (std::size_t p = 0; p < prefixes; ++p) angles[p] = compressed_prefix_angle(img, p);
    return synthesize(position_qubits, angles);
}

}  // namespace qimage

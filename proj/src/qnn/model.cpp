#include "qnn/model.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "util/rng.hpp"

namespace qnn {

void QnnConfig::validate() const {
    if (image_side < 2 || !std::has_single_bit(static_cast<unsigned>(image_side))) {
        throw std::invalid_argument("QnnConfig: image_side must be a power of two >= 2");
    }
    if (compressed && image_side < 4) {
        throw std::invalid_argument("QnnConfig: compressed encoding needs image_side >= 4");
    }
    if (layers < 1) throw std::invalid_argument("QnnConfig: layers must be >= 1");
}

int pixel_qubit_count(const QnnConfig& config) {
    config.validate();
    const int n = std::countr_zero(static_cast<unsigned>(config.image_side));
    return config.compressed ? 2 * n - 2 : 2 * n;
}

int count_params(const QnnConfig& config) { return config.layers * pixel_qubit_count(config); }

ParamVector init_params(const QnnConfig& config) {
    util::Rng rng(util::mix_seed(config.seed, 0x7061726dULL));
    ParamVector params;
    params.angles.resize(static_cast<std::size_t>(count_params(config)));
    for (double& a : params.angles) a = rng.normal(0.0, 0.1);
    return params;
}

std::vector<qsim::GateOp> build_layer(Arch arch, const QnnConfig& config, int layer_index,
                                      std::span<const double> layer_angles) {
    const int pixels = pixel_qubit_count(config);
    if (static_cast<int>(layer_angles.size()) != pixels) {
        throw std::invalid_argument("build_layer: need one angle per pixel qubit");
    }
    const int color = pixels;
    const int readout = pixels + 1;

    std::vector<qsim::GateOp> ops;
    ops.reserve(static_cast<std::size_t>(2 * pixels));
    for (int p = 0; p < pixels; ++p) {
        const double theta = layer_angles[static_cast<std::size_t>(p)];
        if (arch == Arch::CRADL) {
            if (layer_index % 2 == 0) {
                ops.push_back(qsim::GateOp::xx(theta, p, readout));
                ops.push_back(qsim::GateOp::xx(theta, p, color));
            } else {
                ops.push_back(qsim::GateOp::zz(theta, p, readout));
                ops.push_back(qsim::GateOp::zz(theta, p, color));
            }
        } else {
            ops.push_back(qsim::GateOp::xx(theta, p, readout));
            ops.push_back(qsim::GateOp::zz(theta, p, color));
        }
    }
    return ops;
}

std::vector<NetworkGate> network_gates(const QnnConfig& config) {
    const int pixels = pixel_qubit_count(config);
    const int color = pixels;
    const int readout = pixels + 1;

    std::vector<NetworkGate> gates;
    gates.reserve(static_cast<std::size_t>(2 * pixels * config.layers));
    for (int layer = 0; layer < config.layers; ++layer) {
        for (int p = 0; p < pixels; ++p) {
            const int param = layer * pixels + p;
            if (config.arch == Arch::CRADL) {
                const bool xx = (layer % 2 == 0);
                gates.push_back({xx, p, readout, param});
                gates.push_back({xx, p, color, param});
            } else {
                gates.push_back({true, p, readout, param});
                gates.push_back({false, p, color, param});
            }
        }
    }
    return gates;
}

double forward(const QnnConfig& config, const ParamVector& params, const qsim::StateVector& encoded) {
    const int pixels = pixel_qubit_count(config);
    if (static_cast<int>(params.angles.size()) != count_params(config)) {
        throw std::invalid_argument("forward: parameter count mismatch");
    }
    if (encoded.num_qubits() != pixels + 1) {
        throw std::invalid_argument("forward: encoded state must cover pixel + color qubits");
    }
    qsim::StateVector state = encoded;
    state.extend_with_zeros(1);
    const int readout = pixels + 1;

    for (const NetworkGate& g : network_gates(config)) {
        const double theta = params.angles[static_cast<std::size_t>(g.param_index)];
        if (g.xx) {
            state.apply_xx(theta, g.qubit_a, g.qubit_b);
        } else {
            state.apply_zz(theta, g.qubit_a, g.qubit_b);
        }
    }
    return state.expectation_z(readout);
}

namespace {

void check_label(int label) {
    if (label != 1 && label != -1) throw std::invalid_argument("loss: label must be +1 or -1");
}

}  // namespace

double hinge_loss(double prediction, int label) {
    check_label(label);
    return std::max(0.0, 1.0 - label * prediction);
}

double mse_loss(double prediction, int label) {
    check_label(label);
    const double d = prediction - label;
    return d * d;
}

double loss_value(Loss loss, double prediction, int label) {
    return loss == Loss::Hinge ? hinge_loss(prediction, label) : mse_loss(prediction, label);
}

double loss_slope(Loss loss, double prediction, int label) {
    check_label(label);
    if (loss == Loss::Hinge) {
        return (1.0 - label * prediction > 0.0) ? -static_cast<double>(label) : 0.0;
    }
    return 2.0 * (prediction - label);
}

int predicted_class(double prediction) { return prediction >= 0.0 ? 1 : -1; }

}  // namespace qnn

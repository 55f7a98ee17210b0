#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/state.hpp"

namespace qnn {

enum class Arch { CRADL, CRAML };
enum class Loss { Hinge, MSE };

/// Circuit classifier configuration. Qubit layout: pixel qubits 0..P-1,
/// color qubit P, readout qubit P+1; the encoded input state covers the
/// pixel+color register and the readout is appended in |0>.
struct QnnConfig {
    int image_side = 8;      // power of two
    bool compressed = false;
    int layers = 1;
    Arch arch = Arch::CRADL;
    Loss loss = Loss::Hinge;
    std::uint64_t seed = 0;

    void validate() const;
};

/// P = 2n for the full encoding, 2n - 2 for the compressed one.
int pixel_qubit_count(const QnnConfig& config);

/// layers * pixel qubit count; one shared angle per (layer, pixel qubit).
int count_params(const QnnConfig& config);

/// Trainable angles, layer-major: angles[layer * P + pixel].
struct ParamVector {
    std::vector<double> angles;
};

/// Seeded normal(0, 0.1) initialization.
ParamVector init_params(const QnnConfig& config);

/// Gate sequence of one layer. CRADL alternates whole layers: even layers
/// couple each pixel qubit to readout then color with XX, odd layers with
/// ZZ. CRAML mixes inside the layer: XX to readout, ZZ to color. Both gates
/// of a pixel qubit share one angle.
std::vector<qsim::GateOp> build_layer(Arch arch, const QnnConfig& config, int layer_index,
                                      std::span<const double> layer_angles);

/// Whole network as a flat gate list; gate g belongs to parameter
/// param_index(g) (two gates per parameter).
struct NetworkGate {
    bool xx = true;  // false -> ZZ
    int qubit_a = 0;
    int qubit_b = 0;
    int param_index = 0;
};
std::vector<NetworkGate> network_gates(const QnnConfig& config);

/// Applies every layer to encoded (plus readout in |0>) and returns
/// <Z_readout> in [-1, 1].
double forward(const QnnConfig& config, const ParamVector& params, const qsim::StateVector& encoded);

double hinge_loss(double prediction, int label);
double mse_loss(double prediction, int label);
double loss_value(Loss loss, double prediction, int label);
/// dL/dprediction (hinge subgradient at the kink is 0).
double loss_slope(Loss loss, double prediction, int label);

/// sign(prediction) with 0 mapped to +1.
int predicted_class(double prediction);

}  // namespace qnn

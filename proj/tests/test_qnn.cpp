#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "qimage/frqi.hpp"
#include "qnn/mlp.hpp"
#include "qnn/model.hpp"
#include "qnn/train.hpp"
#include "qsim/reference.hpp"
#include "util/rng.hpp"

using qnn::Arch;
using qnn::Loss;
using qnn::QnnConfig;

namespace {

qimage::BinaryImage random_binary(util::Rng& rng, int side) {
    qimage::BinaryImage img;
    img.side = side;
    img.bits.resize(static_cast<std::size_t>(side) * side);
    for (auto& b : img.bits) b = rng.bernoulli(0.5) ? 1 : 0;
    return img;
}

// Linearly trivial classification task: all-black vs all-white images.
qnn::EncodedDataset trivial_encoded(int count, bool compressed) {
    std::vector<qimage::BinaryImage> images;
    std::vector<int> labels;
    for (int i = 0; i < count; ++i) {
        const bool white = i % 2 == 0;
        qimage::BinaryImage img;
        img.side = 8;
        img.bits.assign(64, white ? 1 : 0);
        images.push_back(img);
        labels.push_back(white ? 1 : -1);
    }
    return qnn::encode_dataset(images, labels, compressed);
}

std::vector<std::size_t> iota_indices(std::size_t count, std::size_t start = 0) {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = start + i;
    return idx;
}

}  // namespace

TEST_CASE("parameter counts reproduce the model table") {
    QnnConfig qnn1{8, false, 12, Arch::CRADL, Loss::Hinge, 0};
    CHECK(qnn::pixel_qubit_count(qnn1) == 6);
    CHECK(qnn::count_params(qnn1) == 72);

    QnnConfig qnn2{8, true, 16, Arch::CRADL, Loss::Hinge, 0};
    CHECK(qnn::pixel_qubit_count(qnn2) == 4);
    CHECK(qnn::count_params(qnn2) == 64);

    QnnConfig qnn3{16, true, 42, Arch::CRAML, Loss::Hinge, 0};
    CHECK(qnn::pixel_qubit_count(qnn3) == 6);
    CHECK(qnn::count_params(qnn3) == 252);
}

TEST_CASE("mlp baseline parameter counts") {
    CHECK(qnn::MlpBaseline(64, 0).parameter_count() == 67);
    CHECK(qnn::MlpBaseline(256, 0).parameter_count() == 259);
}

TEST_CASE("build_layer gate structure") {
    QnnConfig cfg{8, false, 4, Arch::CRADL, Loss::Hinge, 0};
    const std::vector<double> angles(6, 0.3);

    SUBCASE("CRADL even layers are XX pairs, odd layers ZZ pairs") {
        const auto even = qnn::build_layer(Arch::CRADL, cfg, 0, angles);
        REQUIRE(even.size() == 12);  // 2 gates per pixel qubit
        for (const auto& op : even) CHECK(op.kind == qsim::GateKind::XX);

        const auto odd = qnn::build_layer(Arch::CRADL, cfg, 1, angles);
        for (const auto& op : odd) CHECK(op.kind == qsim::GateKind::ZZ);

        // both gates of pixel p share the angle and touch readout then color
        CHECK(even[0].qubits == std::vector<int>{0, 7});
        CHECK(even[1].qubits == std::vector<int>{0, 6});
        CHECK(even[0].theta == even[1].theta);
    }

    SUBCASE("CRAML mixes XX to readout and ZZ to color inside one layer") {
        const auto ops = qnn::build_layer(Arch::CRAML, cfg, 0, angles);
        REQUIRE(ops.size() == 12);
        for (std::size_t p = 0; p < 6; ++p) {
            CHECK(ops[2 * p].kind == qsim::GateKind::XX);
            CHECK(ops[2 * p].qubits == std::vector<int>{static_cast<int>(p), 7});
            CHECK(ops[2 * p + 1].kind == qsim::GateKind::ZZ);
            CHECK(ops[2 * p + 1].qubits == std::vector<int>{static_cast<int>(p), 6});
        }
    }

    SUBCASE("angle count mismatch is rejected") {
        CHECK_THROWS_AS(qnn::build_layer(Arch::CRADL, cfg, 0, std::vector<double>(5, 0.0)),
                        std::invalid_argument);
    }
}

TEST_CASE("zero angles leave the network as the identity") {
    util::Rng rng(3);
    QnnConfig cfg{4, false, 3, Arch::CRADL, Loss::Hinge, 0};
    qnn::ParamVector zero;
    zero.angles.assign(static_cast<std::size_t>(qnn::count_params(cfg)), 0.0);

    const auto img = random_binary(rng, 4);
    const auto encoded = qimage::frqi_state(img);
    CHECK(qnn::forward(cfg, zero, encoded) == doctest::Approx(1.0));  // readout untouched in |0>
}

TEST_CASE("predictions stay in [-1, 1] and are deterministic") {
    util::Rng rng(6);
    QnnConfig cfg{8, true, 5, Arch::CRAML, Loss::Hinge, 17};
    const qnn::ParamVector params = qnn::init_params(cfg);
    const auto img = random_binary(rng, 8);
    const auto encoded = qimage::compressed_state(img);

    const double a = qnn::forward(cfg, params, encoded);
    const double b = qnn::forward(cfg, params, encoded);
    CHECK(a == b);
    CHECK(std::abs(a) <= 1.0 + 1e-12);
}

TEST_CASE("CRAML layer on a basis state matches the dense composition oracle") {
    QnnConfig cfg{4, true, 1, Arch::CRAML, Loss::Hinge, 0};  // 2 pixel qubits -> 4 total
    const int pixels = qnn::pixel_qubit_count(cfg);
    REQUIRE(pixels == 2);
    qnn::ParamVector params;
    params.angles = {std::numbers::pi, 0.4};

    // encoded basis state |01> on pixel+color register (3 qubits)
    std::vector<qsim::cd> amps(8, qsim::cd(0, 0));
    amps[1] = qsim::cd(1, 0);
    const auto encoded = qsim::StateVector::from_amplitudes(3, amps);

    // dense path over the full 4-qubit space
    std::vector<qsim::cd> dense(16, qsim::cd(0, 0));
    dense[1] = qsim::cd(1, 0);
    for (const auto& g : qnn::network_gates(cfg)) {
        const double theta = params.angles[static_cast<std::size_t>(g.param_index)];
        const int pair[2] = {g.qubit_a, g.qubit_b};
        qsim::ref::apply_dense(dense, g.xx ? qsim::ref::xx_matrix(theta) : qsim::ref::zz_matrix(theta), pair);
    }
    double dense_expz = 0.0;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        dense_expz += ((i >> 3) & 1 ? -1.0 : 1.0) * std::norm(dense[i]);
    }

    CHECK(qnn::forward(cfg, params, encoded) == doctest::Approx(dense_expz).epsilon(1e-12));
}

TEST_CASE("loss functions") {
    CHECK(qnn::hinge_loss(1.0, 1) == 0.0);
    CHECK(qnn::mse_loss(1.0, 1) == 0.0);
    CHECK(qnn::hinge_loss(0.0, 1) == 1.0);
    CHECK(qnn::mse_loss(0.0, 1) == 1.0);
    CHECK(qnn::hinge_loss(-1.0, 1) == 2.0);
    CHECK(qnn::mse_loss(-1.0, 1) == 4.0);
    CHECK_THROWS_AS(qnn::hinge_loss(0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(qnn::mse_loss(0.0, 2), std::invalid_argument);

    // hinge is zero exactly when label * prediction >= 1
    for (double pred : {-1.0, -0.5, 0.0, 0.5, 0.99, 1.0}) {
        for (int label : {-1, 1}) {
            const double h = qnn::hinge_loss(pred, label);
            CHECK(h >= 0.0);
            CHECK((h == 0.0) == (label * pred >= 1.0));
        }
    }
}

TEST_CASE("parameter-shift gradient matches central finite differences") {
    util::Rng rng(21);
    const QnnConfig configs[] = {
        {4, false, 2, Arch::CRADL, Loss::Hinge, 5},
        {4, false, 3, Arch::CRAML, Loss::MSE, 6},
        {4, true, 2, Arch::CRAML, Loss::MSE, 7},
        {8, true, 2, Arch::CRADL, Loss::MSE, 8},
    };
    for (const auto& cfg : configs) {
        // small dataset with both classes
        std::vector<qimage::BinaryImage> images;
        std::vector<int> labels;
        for (int i = 0; i < 4; ++i) {
            images.push_back(random_binary(rng, cfg.image_side));
            labels.push_back(i % 2 == 0 ? 1 : -1);
        }
        const auto data = qnn::encode_dataset(images, labels, cfg.compressed);
        const auto batch = iota_indices(data.size());

        qnn::ParamVector params = qnn::init_params(cfg);
        for (auto& a : params.angles) a = rng.uniform(-1.0, 1.0);

        const auto analytic = qnn::gradient(cfg, params, data, batch);

        const double step = 1e-4;
        for (std::size_t p = 0; p < params.angles.size(); ++p) {
            qnn::ParamVector shifted = params;
            shifted.angles[p] += step;
            double loss_plus = 0.0;
            for (std::size_t s : batch) {
                loss_plus += qnn::loss_value(cfg.loss, qnn::forward(cfg, shifted, data.states[s]), data.labels[s]);
            }
            shifted.angles[p] = params.angles[p] - step;
            double loss_minus = 0.0;
            for (std::size_t s : batch) {
                loss_minus += qnn::loss_value(cfg.loss, qnn::forward(cfg, shifted, data.states[s]), data.labels[s]);
            }
            const double fd = (loss_plus - loss_minus) / (2.0 * step * static_cast<double>(batch.size()));
            const double scale = std::max(1.0, std::abs(fd));
            CHECK(std::abs(analytic.angles[p] - fd) / scale < 1e-5);
        }
    }
}

TEST_CASE("single-gate parameter shift equals the two-evaluation formula") {
    // One layer, one pixel qubit (2x2 uncompressed... smallest is side 2 ->
    // 2 pixel qubits, so use compressed=false side=2 and check per-gate sum).
    QnnConfig cfg{2, false, 1, Arch::CRAML, Loss::MSE, 9};
    const int pixels = qnn::pixel_qubit_count(cfg);
    REQUIRE(pixels == 2);
    util::Rng rng(33);
    const auto img = random_binary(rng, 2);
    const auto encoded = qimage::frqi_state(img);

    qnn::ParamVector params = qnn::init_params(cfg);
    const auto gates = qnn::network_gates(cfg);

    qnn::EncodedDataset data;
    data.states.push_back(encoded);
    data.labels.push_back(1);
    const auto grad = qnn::gradient(cfg, params, data, {0});

    constexpr double kHalfPi = std::numbers::pi / 2.0;
    const double base = qnn::forward(cfg, params, encoded);
    const double slope = qnn::loss_slope(cfg.loss, base, 1);
    for (std::size_t p = 0; p < params.angles.size(); ++p) {
        double expected = 0.0;
        for (std::size_t g = 0; g < gates.size(); ++g) {
            if (gates[g].param_index != static_cast<int>(p)) continue;
            // shift only occurrence g by +-pi/2
            for (double sign : {1.0, -1.0}) {
                qsim::StateVector state = encoded;
                state.extend_with_zeros(1);
                for (std::size_t k = 0; k < gates.size(); ++k) {
                    double theta = params.angles[static_cast<std::size_t>(gates[k].param_index)];
                    if (k == g) theta += sign * kHalfPi;
                    if (gates[k].xx) {
                        state.apply_xx(theta, gates[k].qubit_a, gates[k].qubit_b);
                    } else {
                        state.apply_zz(theta, gates[k].qubit_a, gates[k].qubit_b);
                    }
                }
                expected += sign * state.expectation_z(pixels + 1) / 2.0;
            }
        }
        CHECK(grad.angles[p] == doctest::Approx(slope * expected).epsilon(1e-10));
    }
}

TEST_CASE("k-fold partition properties") {
    for (std::size_t count : {10, 37, 100}) {
        for (int folds : {2, 3, 10}) {
            const auto parts = qnn::kfold_partition(count, folds, 7);
            REQUIRE(parts.size() == static_cast<std::size_t>(folds));
            std::set<std::size_t> seen;
            std::size_t smallest = count, largest = 0;
            for (const auto& part : parts) {
                smallest = std::min(smallest, part.size());
                largest = std::max(largest, part.size());
                for (std::size_t idx : part) {
                    CHECK(idx < count);
                    CHECK(seen.insert(idx).second);  // disjoint
                }
            }
            CHECK(seen.size() == count);       // union covers everything
            CHECK(largest - smallest <= 1);    // balanced
        }
    }
    CHECK_THROWS_AS(qnn::kfold_partition(5, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(qnn::kfold_partition(5, 6, 0), std::invalid_argument);
}

TEST_CASE("training separates the trivial dataset quickly") {
    // Pure-color classes need the color qubit's state to reach the readout,
    // which takes an XX-ZZ-XX chain: three CRADL layers minimum.
    const auto data = trivial_encoded(40, false);
    QnnConfig cfg{8, false, 3, Arch::CRADL, Loss::MSE, 11};
    qnn::OptConfig opt;
    opt.epochs = 5;
    opt.batch_size = 8;
    opt.learning_rate = 0.5;

    const auto train_idx = iota_indices(30);
    const auto val_idx = iota_indices(10, 30);
    const auto history = qnn::train_split(cfg, data, train_idx, val_idx, opt);
    REQUIRE(history.val_accuracy.size() == 5);
    CHECK(history.val_accuracy.back() == doctest::Approx(1.0));
}

TEST_CASE("two-layer networks cannot see a pure color flip but deeper CRADL can") {
    // With every pixel qubit in |+> the first XX layer factorizes, and a
    // CRAML color coupling is ZZ-only, so an all-black vs all-white pair is
    // invisible to the readout; from three CRADL layers on it is not.
    qimage::BinaryImage black;
    black.side = 8;
    black.bits.assign(64, 0);
    qimage::BinaryImage white = black;
    white.bits.assign(64, 1);

    util::Rng rng(1);
    double two_layer_gap = 0.0, three_layer_gap = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        qnn::ParamVector p2, p3;
        QnnConfig cfg2{8, false, 2, Arch::CRADL, Loss::Hinge, 0};
        QnnConfig cfg3{8, false, 3, Arch::CRADL, Loss::Hinge, 0};
        p2.angles.resize(static_cast<std::size_t>(qnn::count_params(cfg2)));
        p3.angles.resize(static_cast<std::size_t>(qnn::count_params(cfg3)));
        for (auto& a : p2.angles) a = rng.uniform(-3.0, 3.0);
        for (auto& a : p3.angles) a = rng.uniform(-3.0, 3.0);

        two_layer_gap = std::max(two_layer_gap,
                                 std::abs(qnn::forward(cfg2, p2, qimage::frqi_state(black)) -
                                          qnn::forward(cfg2, p2, qimage::frqi_state(white))));
        three_layer_gap = std::max(three_layer_gap,
                                   std::abs(qnn::forward(cfg3, p3, qimage::frqi_state(black)) -
                                            qnn::forward(cfg3, p3, qimage::frqi_state(white))));
    }
    CHECK(two_layer_gap < 1e-12);
    CHECK(three_layer_gap > 0.1);
}

TEST_CASE("zero epochs reports only the initial accuracy") {
    const auto data = trivial_encoded(10, false);
    QnnConfig cfg{8, false, 1, Arch::CRADL, Loss::Hinge, 2};
    qnn::OptConfig opt;
    opt.epochs = 0;
    const auto history = qnn::train_split(cfg, data, iota_indices(8), iota_indices(2, 8), opt);
    CHECK(history.train_loss.empty());
    CHECK(history.val_accuracy.empty());
    CHECK(history.initial_val_accuracy >= 0.0);
}

TEST_CASE("same seed gives identical histories") {
    const auto data = trivial_encoded(24, true);
    QnnConfig cfg{8, true, 2, Arch::CRAML, Loss::MSE, 77};
    qnn::OptConfig opt;
    opt.epochs = 3;
    opt.batch_size = 6;

    const auto a = qnn::train_split(cfg, data, iota_indices(16), iota_indices(8, 16), opt);
    const auto b = qnn::train_split(cfg, data, iota_indices(16), iota_indices(8, 16), opt);
    CHECK(a.train_loss == b.train_loss);
    CHECK(a.val_accuracy == b.val_accuracy);
}

TEST_CASE("train rejects single-class splits") {
    qnn::EncodedDataset data;
    qimage::BinaryImage img;
    img.side = 4;
    img.bits.assign(16, 0);
    for (int i = 0; i < 6; ++i) {
        data.states.push_back(qimage::frqi_state(img));
        data.labels.push_back(1);
    }
    QnnConfig cfg{4, false, 1, Arch::CRADL, Loss::Hinge, 0};
    qnn::OptConfig opt;
    CHECK_THROWS_AS(qnn::train_split(cfg, data, iota_indices(4), iota_indices(2, 4), opt),
                    std::invalid_argument);
}

TEST_CASE("mlp trains to perfect accuracy on the trivial dataset") {
    std::vector<qimage::BinaryImage> images;
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) {
        qimage::BinaryImage img;
        img.side = 8;
        img.bits.assign(64, i % 2 == 0 ? 1 : 0);
        images.push_back(img);
        labels.push_back(i % 2 == 0 ? 1 : -1);
    }
    const auto data = qnn::flatten_dataset(images, labels);
    CHECK(data.input_dim == 64);

    qnn::MlpBaseline model(64, 5);
    qnn::OptConfig opt;
    opt.epochs = 10;
    opt.batch_size = 8;
    opt.learning_rate = 0.1;
    const auto history = qnn::mlp_train_split(model, Loss::Hinge, data, iota_indices(30), iota_indices(10, 30), opt, 5);
    CHECK(history.val_accuracy.back() == doctest::Approx(1.0));
}

TEST_CASE("mlp gradient matches finite differences through both tanh stages") {
    util::Rng rng(44);
    qnn::MlpBaseline model(6, 3);
    std::vector<double> x(6);
    for (auto& v : x) v = rng.uniform();

    for (Loss loss : {Loss::Hinge, Loss::MSE}) {
        for (int label : {1, -1}) {
            std::vector<double> grad(static_cast<std::size_t>(model.parameter_count()), 0.0);
            model.accumulate_gradient(x, label, loss, grad);

            // central finite differences, one parameter at a time
            const auto base = model.parameters();
            for (int p = 0; p < model.parameter_count(); ++p) {
                const double step = 1e-6;
                auto nudged = base;
                nudged[static_cast<std::size_t>(p)] = base[static_cast<std::size_t>(p)] + step;
                qnn::MlpBaseline plus = model;
                plus.set_parameters(nudged);
                nudged[static_cast<std::size_t>(p)] = base[static_cast<std::size_t>(p)] - step;
                qnn::MlpBaseline minus = model;
                minus.set_parameters(nudged);
                const double fd = (qnn::loss_value(loss, plus.forward(x), label) -
                                   qnn::loss_value(loss, minus.forward(x), label)) /
                                  (2.0 * step);
                CHECK(grad[static_cast<std::size_t>(p)] == doctest::Approx(fd).epsilon(1e-4));
            }
        }
    }
}

#include "qnn/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qimage/frqi.hpp"
#include "qnn/optimizer.hpp"
#include "util/rng.hpp"

namespace qnn {

namespace {

constexpr double kHalfPi = 1.5707963267948966192313216916398;

void apply_gate(qsim::StateVector& state, const NetworkGate& g, double theta) {
    if (g.xx) {
        state.apply_xx(theta, g.qubit_a, g.qubit_b);
    } else {
        state.apply_zz(theta, g.qubit_a, g.qubit_b);
    }
}

// Prediction and per-parameter shift differences for one sample.
// Prefix states are cached so the g-th shifted run only replays the suffix.
void sample_gradient(const QnnConfig& config, const ParamVector& params,
                     const std::vector<NetworkGate>& gates, const qsim::StateVector& encoded, int label,
                     double* out_grad, double& out_loss) {
    const int readout = pixel_qubit_count(config) + 1;
    const std::size_t num_gates = gates.size();

    std::vector<qsim::StateVector> prefixes;
    prefixes.reserve(num_gates + 1);
    {
        qsim::StateVector state = encoded;
        state.extend_with_zeros(1);
        prefixes.push_back(state);
        for (const NetworkGate& g : gates) {
            apply_gate(state, g, params.angles[static_cast<std::size_t>(g.param_index)]);
            prefixes.push_back(state);
        }
    }
    const double prediction = prefixes.back().expectation_z(readout);
    out_loss = loss_value(config.loss, prediction, label);
    const double slope = loss_slope(config.loss, prediction, label);

    if (slope == 0.0) return;  // hinge outside the margin: nothing to add

    for (std::size_t g = 0; g < num_gates; ++g) {
        double shifted[2];
        for (int s = 0; s < 2; ++s) {
            const double delta = s == 0 ? kHalfPi : -kHalfPi;
            qsim::StateVector state = prefixes[g];
            apply_gate(state, gates[g], params.angles[static_cast<std::size_t>(gates[g].param_index)] + delta);
            for (std::size_t rest = g + 1; rest < num_gates; ++rest) {
                apply_gate(state, gates[rest], params.angles[static_cast<std::size_t>(gates[rest].param_index)]);
            }
            shifted[s] = state.expectation_z(readout);
        }
        out_grad[gates[g].param_index] += slope * (shifted[0] - shifted[1]) / 2.0;
    }
}

}  // namespace

EncodedDataset encode_dataset(const std::vector<qimage::BinaryImage>& images, const std::vector<int>& labels,
                              bool compressed) {
    if (images.size() != labels.size()) throw std::invalid_argument("encode_dataset: size mismatch");
    EncodedDataset data;
    data.labels = labels;
    data.states.reserve(images.size());
    for (const auto& img : images) {
        data.states.push_back(compressed ? qimage::compressed_state(img) : qimage::frqi_state(img));
    }
    return data;
}

ParamVector gradient(const QnnConfig& config, const ParamVector& params, const EncodedDataset& data,
                     const std::vector<std::size_t>& batch) {
    if (batch.empty()) throw std::invalid_argument("gradient: empty batch");
    const int num_params = count_params(config);
    if (static_cast<int>(params.angles.size()) != num_params) {
        throw std::invalid_argument("gradient: parameter count mismatch");
    }
    const auto gates = network_gates(config);

    std::vector<double> per_sample(batch.size() * static_cast<std::size_t>(num_params), 0.0);
    std::vector<double> losses(batch.size(), 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(batch.size()); ++b) {
        const std::size_t idx = batch[static_cast<std::size_t>(b)];
        sample_gradient(config, params, gates, data.states[idx], data.labels[idx],
                        per_sample.data() + static_cast<std::size_t>(b) * static_cast<std::size_t>(num_params),
                        losses[static_cast<std::size_t>(b)]);
    }

    ParamVector grad;
    grad.angles.assign(static_cast<std::size_t>(num_params), 0.0);
    for (std::size_t b = 0; b < batch.size(); ++b) {
        for (int p = 0; p < num_params; ++p) {
            grad.angles[static_cast<std::size_t>(p)] +=
                per_sample[b * static_cast<std::size_t>(num_params) + static_cast<std::size_t>(p)];
        }
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (double& g : grad.angles) g *= inv;
    return grad;
}

std::vector<std::vector<std::size_t>> kfold_partition(std::size_t count, int folds, std::uint64_t seed) {
    if (folds < 2 || static_cast<std::size_t>(folds) > count) {
        throw std::invalid_argument("kfold_partition: folds must be in [2, count]");
    }
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    util::Rng rng(util::mix_seed(seed, 0x666f6c64ULL));
    rng.shuffle(order);

    std::vector<std::vector<std::size_t>> parts(static_cast<std::size_t>(folds));
    for (std::size_t i = 0; i < count; ++i) {
        parts[i % static_cast<std::size_t>(folds)].push_back(order[i]);
    }
    return parts;
}

double dataset_accuracy(const QnnConfig& config, const ParamVector& params, const EncodedDataset& data,
                        const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw std::invalid_argument("dataset_accuracy: empty index set");
    std::vector<int> correct(indices.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(indices.size()); ++i) {
        const std::size_t idx = indices[static_cast<std::size_t>(i)];
        const double pred = forward(config, params, data.states[idx]);
        correct[static_cast<std::size_t>(i)] = predicted_class(pred) == data.labels[idx] ? 1 : 0;
    }
    const int total = std::accumulate(correct.begin(), correct.end(), 0);
    return static_cast<double>(total) / static_cast<double>(indices.size());
}

namespace {

double dataset_loss(const QnnConfig& config, const ParamVector& params, const EncodedDataset& data,
                    const std::vector<std::size_t>& indices) {
    std::vector<double> losses(indices.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(indices.size()); ++i) {
        const std::size_t idx = indices[static_cast<std::size_t>(i)];
        const double pred = forward(config, params, data.states[idx]);
        losses[static_cast<std::size_t>(i)] = loss_value(config.loss, pred, data.labels[idx]);
    }
    return std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(indices.size());
}

}  // namespace

TrainHistory train_split(const QnnConfig& config, const EncodedDataset& data,
                         const std::vector<std::size_t>& train_idx, const std::vector<std::size_t>& val_idx,
                         const OptConfig& opt, int fold_index) {
    if (train_idx.empty() || val_idx.empty()) throw std::invalid_argument("train_split: empty split");
    bool has_pos = false, has_neg = false;
    for (std::size_t i : train_idx) {
        (data.labels[i] > 0 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) throw std::invalid_argument("train_split: training split must contain both classes");
    if (opt.learning_rate <= 0.0 || opt.batch_size < 1 || opt.epochs < 0) {
        throw std::invalid_argument("train_split: bad optimizer configuration");
    }

    ParamVector params = init_params(config);
    util::Rng shuffle_rng(util::mix_seed(config.seed, 0x73687566ULL + static_cast<std::uint64_t>(fold_index)));
    AdamOptimizer adam(params.angles.size());

    TrainHistory history;
    history.fold = fold_index;
    history.initial_val_accuracy = dataset_accuracy(config, params, data, val_idx);

    std::vector<std::size_t> order = train_idx;
    for (int epoch = 0; epoch < opt.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(opt.batch_size)) {
            const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(opt.batch_size));
            const std::vector<std::size_t> batch(order.begin() + static_cast<std::ptrdiff_t>(start),
                                                 order.begin() + static_cast<std::ptrdiff_t>(end));
            const ParamVector grad = gradient(config, params, data, batch);
            if (opt.adam) {
                adam.step(params.angles, grad.angles, opt.epoch_rate(epoch));
            } else {
                for (std::size_t p = 0; p < params.angles.size(); ++p) {
                    params.angles[p] -= opt.epoch_rate(epoch) * grad.angles[p];
                }
            }
        }
        history.train_loss.push_back(dataset_loss(config, params, data, train_idx));
        history.val_accuracy.push_back(dataset_accuracy(config, params, data, val_idx));
    }
    return history;
}

std::vector<TrainHistory> train(const QnnConfig& config, const EncodedDataset& data, const OptConfig& opt) {
    const auto parts = kfold_partition(data.size(), opt.folds, config.seed);
    std::vector<TrainHistory> histories;
    histories.reserve(parts.size());
    for (std::size_t fold = 0; fold < parts.size(); ++fold) {
        std::vector<std::size_t> train_idx;
        for (std::size_t other = 0; other < parts.size(); ++other) {
            if (other == fold) continue;
            train_idx.insert(train_idx.end(), parts[other].begin(), parts[other].end());
        }
        histories.push_back(train_split(config, data, train_idx, parts[fold], opt, static_cast<int>(fold)));
    }
    return histories;
}

}  // namespace qnn

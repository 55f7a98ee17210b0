#pragma once

#include <cstdint>
#include <vector>

#include "qimage/image.hpp"
#include "qnn/model.hpp"
#include "qsim/state.hpp"

namespace qnn {

/// Images already encoded into pixel+color states, labels in {+1, -1}.
struct EncodedDataset {
    std::vector<qsim::StateVector> states;
    std::vector<int> labels;

    std::size_t size() const { return states.size(); }
};

/// Encodes every image with frqi_state / compressed_state (parallel over
/// images). Labels must already be mapped to +1/-1.
EncodedDataset encode_dataset(const std::vector<qimage::BinaryImage>& images, const std::vector<int>& labels,
                              bool compressed);

struct OptConfig {
    double learning_rate = 0.05;
    int epochs = 30;
    int batch_size = 32;
    int folds = 10;
    /// Adam stabilizes the angle updates (fixed-rate descent oscillates on
    /// the pi-periodic loss surface); plain mini-batch descent remains
    /// available for comparison.
    bool adam = true;
    /// Per-epoch multiplicative learning-rate decay; 1.0 disables it.
    double lr_decay = 1.0;

    double epoch_rate(int epoch) const {
        double rate = learning_rate;
        for (int e = 0; e < epoch; ++e) rate *= lr_decay;
        return rate;
    }
};

struct TrainHistory {
    int fold = 0;
    double initial_val_accuracy = 0.0;
    std::vector<double> train_loss;    // one entry per epoch
    std::vector<double> val_accuracy;  // one entry per epoch
};

/// Mean-loss gradient over the batch by the parameter-shift rule: every gate
/// occurrence of a parameter contributes (f(+pi/2) - f(-pi/2)) / 2, chained
/// through the loss slope. Samples are processed in parallel; per-sample
/// gradients are reduced in index order, so results do not depend on the
/// thread count.
ParamVector gradient(const QnnConfig& config, const ParamVector& params, const EncodedDataset& data,
                     const std::vector<std::size_t>& batch);

/// Seeded disjoint folds covering [0, count); sizes differ by at most one.
std::vector<std::vector<std::size_t>> kfold_partition(std::size_t count, int folds, std::uint64_t seed);

/// Mini-batch gradient descent on an explicit train/validation split.
TrainHistory train_split(const QnnConfig& config, const EncodedDataset& data,
                         const std::vector<std::size_t>& train_idx, const std::vector<std::size_t>& val_idx,
                         const OptConfig& opt, int fold_index = 0);

/// k-fold cross-validation; fold i validates on partition i.
std::vector<TrainHistory> train(const QnnConfig& config, const EncodedDataset& data, const OptConfig& opt);

double dataset_accuracy(const QnnConfig& config, const ParamVector& params, const EncodedDataset& data,
                        const std::vector<std::size_t>& indices);

}  // namespace qnn

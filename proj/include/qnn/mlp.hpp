#pragma once

#include <cstdint>
#include <vector>

#include "qnn/model.hpp"
#include "qnn/train.hpp"

namespace qnn {

/// Flattened pixel vectors with labels in {+1, -1}.
struct FlatDataset {
    int input_dim = 0;
    std::vector<std::vector<double>> inputs;
    std::vector<int> labels;

    std::size_t size() const { return inputs.size(); }
};

FlatDataset flatten_dataset(const std::vector<qimage::BinaryImage>& images, const std::vector<int>& labels);

/// d -> 1 -> 1 network with tanh at both stages; output lies in (-1, 1).
/// Parameter count d + 3 (d input weights, hidden bias, output weight,
/// output bias).
class MlpBaseline {
public:
    MlpBaseline(int input_dim, std::uint64_t seed);

    int input_dim() const { return input_dim_; }
    int parameter_count() const { return input_dim_ + 3; }

    double forward(const std::vector<double>& x) const;

    /// Accumulates dL/dparams for one sample into grad. Parameter layout:
    /// d input weights, hidden bias, output weight, output bias.
    void accumulate_gradient(const std::vector<double>& x, int label, Loss loss, std::vector<double>& grad) const;

    std::vector<double> parameters() const;
    void set_parameters(const std::vector<double>& params);

private:
    int input_dim_;
    std::vector<double> input_weights_;  // d
    double hidden_bias_ = 0.0;
    double output_weight_ = 0.0;
    double output_bias_ = 0.0;
};

TrainHistory mlp_train_split(MlpBaseline& model, Loss loss, const FlatDataset& data,
                             const std::vector<std::size_t>& train_idx, const std::vector<std::size_t>& val_idx,
                             const OptConfig& opt, std::uint64_t seed, int fold_index = 0);

/// k-fold cross-validation with a freshly initialized model per fold.
std::vector<TrainHistory> mlp_train(const FlatDataset& data, Loss loss, const OptConfig& opt, std::uint64_t seed);

double mlp_accuracy(const MlpBaseline& model, const FlatDataset& data, const std::vector<std::size_t>& indices);

}  // namespace qnn

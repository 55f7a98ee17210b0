#include "qnn/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qnn/optimizer.hpp"
#include "util/rng.hpp"

namespace qnn {

FlatDataset flatten_dataset(const std::vector<qimage::BinaryImage>& images, const std::vector<int>& labels) {
    if (images.size() != labels.size()) throw std::invalid_argument("flatten_dataset: size mismatch");
    FlatDataset data;
    data.labels = labels;
    data.inputs.reserve(images.size());
    for (const auto& img : images) {
        img.validate();
        std::vector<double> x(img.bits.size());
        for (std::size_t i = 0; i < img.bits.size(); ++i) x[i] = img.bits[i];
        if (data.input_dim == 0) data.input_dim = static_cast<int>(x.size());
        if (static_cast<int>(x.size()) != data.input_dim) {
            throw std::invalid_argument("flatten_dataset: inconsistent image sizes");
        }
        data.inputs.push_back(std::move(x));
    }
    return data;
}

MlpBaseline::MlpBaseline(int input_dim, std::uint64_t seed) : input_dim_(input_dim) {
    if (input_dim < 1) throw std::invalid_argument("MlpBaseline: input dimension must be >= 1");
    util::Rng rng(util::mix_seed(seed, 0x6d6c70ULL));
    input_weights_.resize(static_cast<std::size_t>(input_dim));
    const double scale = 1.0 / std::sqrt(static_cast<double>(input_dim));
    for (double& w : input_weights_) w = rng.normal(0.0, scale);
    hidden_bias_ = rng.normal(0.0, 0.1);
    output_weight_ = rng.normal(0.0, 1.0);
    output_bias_ = rng.normal(0.0, 0.1);
}

double MlpBaseline::forward(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != input_dim_) throw std::invalid_argument("MlpBaseline: input dimension mismatch");
    double z = hidden_bias_;
    for (int i = 0; i < input_dim_; ++i) z += input_weights_[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    const double h = std::tanh(z);
    return std::tanh(output_weight_ * h + output_bias_);
}

void MlpBaseline::accumulate_gradient(const std::vector<double>& x, int label, Loss loss,
                                      std::vector<double>& grad) const {
    if (grad.size() != static_cast<std::size_t>(parameter_count())) {
        throw std::invalid_argument("MlpBaseline: gradient buffer size mismatch");
    }
    double z = hidden_bias_;
    for (int i = 0; i < input_dim_; ++i) z += input_weights_[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    const double h = std::tanh(z);
    const double o = output_weight_ * h + output_bias_;
    const double y = std::tanh(o);

    const double slope = loss_slope(loss, y, label);
    if (slope == 0.0) return;
    const double do_ = slope * (1.0 - y * y);
    const double dh = do_ * output_weight_ * (1.0 - h * h);

    for (int i = 0; i < input_dim_; ++i) {
        grad[static_cast<std::size_t>(i)] += dh * x[static_cast<std::size_t>(i)];
    }
    grad[static_cast<std::size_t>(input_dim_)] += dh;          // hidden bias
    grad[static_cast<std::size_t>(input_dim_) + 1] += do_ * h;  // output weight
    grad[static_cast<std::size_t>(input_dim_) + 2] += do_;      // output bias
}

std::vector<double> MlpBaseline::parameters() const {
    std::vector<double> params(input_weights_);
    params.push_back(hidden_bias_);
    params.push_back(output_weight_);
    params.push_back(output_bias_);
    return params;
}

void MlpBaseline::set_parameters(const std::vector<double>& params) {
    if (params.size() != static_cast<std::size_t>(parameter_count())) {
        throw std::invalid_argument("MlpBaseline: parameter vector size mismatch");
    }
    std::copy(params.begin(), params.begin() + input_dim_, input_weights_.begin());
    hidden_bias_ = params[static_cast<std::size_t>(input_dim_)];
    output_weight_ = params[static_cast<std::size_t>(input_dim_) + 1];
    output_bias_ = params[static_cast<std::size_t>(input_dim_) + 2];
}

double mlp_accuracy(const MlpBaseline& model, const FlatDataset& data, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw std::invalid_argument("mlp_accuracy: empty index set");
    int correct = 0;
    for (std::size_t i : indices) {
        if (predicted_class(model.forward(data.inputs[i])) == data.labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(indices.size());
}

namespace {

double mlp_loss(const MlpBaseline& model, Loss loss, const FlatDataset& data,
                const std::vector<std::size_t>& indices) {
    double total = 0.0;
    for (std::size_t i : indices) {
        total += loss_value(loss, model.forward(data.inputs[i]), data.labels[i]);
    }
    return total / static_cast<double>(indices.size());
}

}  // namespace

TrainHistory mlp_train_split(MlpBaseline& model, Loss loss, const FlatDataset& data,
                             const std::vector<std::size_t>& train_idx, const std::vector<std::size_t>& val_idx,
                             const OptConfig& opt, std::uint64_t seed, int fold_index) {
    if (train_idx.empty() || val_idx.empty()) throw std::invalid_argument("mlp_train_split: empty split");

    util::Rng shuffle_rng(util::mix_seed(seed, 0x73687566ULL + static_cast<std::uint64_t>(fold_index)));
    TrainHistory history;
    history.fold = fold_index;
    history.initial_val_accuracy = mlp_accuracy(model, data, val_idx);

    std::vector<std::size_t> order = train_idx;
    std::vector<double> grad(static_cast<std::size_t>(model.parameter_count()));
    std::vector<double> params = model.parameters();
    AdamOptimizer adam(params.size());
    for (int epoch = 0; epoch < opt.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(opt.batch_size)) {
            const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(opt.batch_size));
            std::fill(grad.begin(), grad.end(), 0.0);
            for (std::size_t b = start; b < end; ++b) {
                model.accumulate_gradient(data.inputs[order[b]], data.labels[order[b]], loss, grad);
            }
            const double inv = 1.0 / static_cast<double>(end - start);
            for (double& g : grad) g *= inv;
            if (opt.adam) {
                adam.step(params, grad, opt.epoch_rate(epoch));
            } else {
                for (std::size_t p = 0; p < params.size(); ++p) params[p] -= opt.epoch_rate(epoch) * grad[p];
            }
            model.set_parameters(params);
        }
        history.train_loss.push_back(mlp_loss(model, loss, data, train_idx));
        history.val_accuracy.push_back(mlp_accuracy(model, data, val_idx));
    }
    return history;
}

std::vector<TrainHistory> mlp_train(const FlatDataset& data, Loss loss, const OptConfig& opt, std::uint64_t seed) {
    const auto parts = kfold_partition(data.size(), opt.folds, seed);
    std::vector<TrainHistory> histories;
    histories.reserve(parts.size());
    for (std::size_t fold = 0; fold < parts.size(); ++fold) {
        std::vector<std::size_t> train_idx;
        for (std::size_t other = 0; other < parts.size(); ++other) {
            if (other == fold) continue;
            train_idx.insert(train_idx.end(), parts[other].begin(), parts[other].end());
        }
        MlpBaseline model(data.input_dim, util::mix_seed(seed, fold));
        histories.push_back(mlp_train_split(model, loss, data, train_idx, parts[fold], opt, seed, static_cast<int>(fold)));
    }
    return histories;
}

}  // namespace qnn

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "credit/dataset.hpp"

namespace credit {

/// Per-class precision/recall/F1/support plus overall accuracy for a binary
/// task (classes 0 and 1).
struct ClassReport {
    std::array<double, 2> precision{};
    std::array<double, 2> recall{};
    std::array<double, 2> f1{};
    std::array<std::size_t, 2> support{};
    double accuracy = 0.0;
};

/// Report from parallel truth/prediction sequences. Precision and recall
/// default to 0 when their denominator is empty; F1 = 2PR/(P+R) or 0.
ClassReport classification_report(const std::vector<int>& truth, const std::vector<int>& predicted);

struct SplitConfig {
    double test_fraction = 0.3;
    std::uint64_t seed = 0;
};

struct TrainTestSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Stratified split: each class is sampled separately, preserving the class
/// ratio to within one sample.
TrainTestSplit stratified_split(const std::vector<int>& labels, const SplitConfig& config);

struct LogisticConfig {
    double learning_rate = 0.1;
    int epochs = 500;
    double l2 = 1e-3;  // applied to weights, not the intercept
};

/// Full-batch gradient-descent logistic regression (weights start at zero,
/// so the fit is deterministic).
class LogisticModel {
public:
    LogisticModel() = default;

    void fit(const std::vector<std::vector<double>>& columns, const std::vector<std::size_t>& row_ids,
             const std::vector<int>& labels, const LogisticConfig& config);

    double probability(const std::vector<std::vector<double>>& columns, std::size_t row) const;
    int predict(const std::vector<std::vector<double>>& columns, std::size_t row) const;

    const std::vector<double>& weights() const { return weights_; }
    double intercept() const { return intercept_; }

private:
    std::vector<double> weights_;
    double intercept_ = 0.0;
};

/// Trains on the stratified train rows of the selected columns and reports
/// on the held-out rows.
struct EvaluationResult {
    LogisticModel model;
    ClassReport report;
    TrainTestSplit split;
};

EvaluationResult train_and_evaluate(const FeatureMatrix& matrix, const std::vector<std::size_t>& feature_ids,
                                    const SplitConfig& split_cfg, const LogisticConfig& train_cfg);

}  // namespace credit

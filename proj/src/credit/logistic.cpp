#include "credit/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "util/rng.hpp"

namespace credit {

ClassReport classification_report(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.size() != predicted.size() || truth.empty()) {
        throw std::invalid_argument("classification_report: size mismatch");
    }
    std::array<std::array<std::size_t, 2>, 2> confusion{};  // [truth][predicted]
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const int t = truth[i];
        const int p = predicted[i];
        if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
            throw std::invalid_argument("classification_report: labels must be 0 or 1");
        }
        ++confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    }

    ClassReport report;
    std::size_t correct = 0;
    for (int c = 0; c < 2; ++c) {
        const std::size_t tp = confusion[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
        const std::size_t fn = confusion[static_cast<std::size_t>(c)][static_cast<std::size_t>(1 - c)];
        const std::size_t fp = confusion[static_cast<std::size_t>(1 - c)][static_cast<std::size_t>(c)];
        const std::size_t support = tp + fn;
        report.support[static_cast<std::size_t>(c)] = support;
        report.precision[static_cast<std::size_t>(c)] = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
        report.recall[static_cast<std::size_t>(c)] = support > 0 ? static_cast<double>(tp) / static_cast<double>(support) : 0.0;
        const double p = report.precision[static_cast<std::size_t>(c)];
        const double r = report.recall[static_cast<std::size_t>(c)];
        report.f1[static_cast<std::size_t>(c)] = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
        correct += tp;
    }
    report.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
    return report;
}

TrainTestSplit stratified_split(const std::vector<int>& labels, const SplitConfig& config) {
    if (labels.empty()) throw std::invalid_argument("stratified_split: empty label set");
    if (!(config.test_fraction > 0.0 && config.test_fraction < 1.0)) {
        throw std::invalid_argument("stratified_split: test_fraction must be in (0, 1)");
    }
    util::Rng rng(util::mix_seed(config.seed, 0x73706c69ULL));

    TrainTestSplit split;
    for (int cls = 0; cls < 2; ++cls) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == cls) members.push_back(i);
        }
        rng.shuffle(members);
        const std::size_t test_count = static_cast<std::size_t>(
            std::llround(config.test_fraction * static_cast<double>(members.size())));
        for (std::size_t i = 0; i < members.size(); ++i) {
            (i < test_count ? split.test : split.train).push_back(members[i]);
        }
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    if (split.train.empty() || split.test.empty()) {
        throw std::invalid_argument("stratified_split: degenerate split");
    }
    return split;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

void LogisticModel::fit(const std::vector<std::vector<double>>& columns, const std::vector<std::size_t>& row_ids,
                        const std::vector<int>& labels, const LogisticConfig& config) {
    if (columns.empty()) throw std::invalid_argument("LogisticModel::fit: no features");
    if (row_ids.empty()) throw std::invalid_argument("LogisticModel::fit: no training rows");
    bool has0 = false, has1 = false;
    for (std::size_t r : row_ids) {
        (labels[r] == 0 ? has0 : has1) = true;
    }
    if (!has0 || !has1) throw std::invalid_argument("LogisticModel::fit: training rows contain a single class");

    const std::size_t d = columns.size();
    weights_.assign(d, 0.0);
    intercept_ = 0.0;

    const double inv_n = 1.0 / static_cast<double>(row_ids.size());
    std::vector<double> grad(d);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_b = 0.0;
        for (std::size_t r : row_ids) {
            double z = intercept_;
            for (std::size_t f = 0; f < d; ++f) z += weights_[f] * columns[f][r];
            const double err = sigmoid(z) - static_cast<double>(labels[r]);
            for (std::size_t f = 0; f < d; ++f) grad[f] += err * columns[f][r];
            grad_b += err;
        }
        for (std::size_t f = 0; f < d; ++f) {
            weights_[f] -= config.learning_rate * (grad[f] * inv_n + config.l2 * weights_[f]);
        }
        intercept_ -= config.learning_rate * grad_b * inv_n;
    }
}

double LogisticModel::probability(const std::vector<std::vector<double>>& columns, std::size_t row) const {
    double z = intercept_;
    for (std::size_t f = 0; f < weights_.size(); ++f) z += weights_[f] * columns[f][row];
    return sigmoid(z);
}

int LogisticModel::predict(const std::vector<std::vector<double>>& columns, std::size_t row) const {
    return probability(columns, row) >= 0.5 ? 1 : 0;
}

EvaluationResult train_and_evaluate(const FeatureMatrix& matrix, const std::vector<std::size_t>& feature_ids,
                                    const SplitConfig& split_cfg, const LogisticConfig& train_cfg) {
    if (feature_ids.empty()) throw std::invalid_argument("train_and_evaluate: need at least one feature");

    std::vector<std::vector<double>> selected;
    selected.reserve(feature_ids.size());
    for (std::size_t f : feature_ids) selected.push_back(matrix.columns[f]);

    EvaluationResult result;
    result.split = stratified_split(matrix.labels, split_cfg);
    result.model.fit(selected, result.split.train, matrix.labels, train_cfg);

    std::vector<int> truth, predicted;
    truth.reserve(result.split.test.size());
    predicted.reserve(result.split.test.size());
    for (std::size_t r : result.split.test) {
        truth.push_back(matrix.labels[r]);
        predicted.push_back(result.model.predict(selected, r));
    }
    result.report = classification_report(truth, predicted);
    return result;
}

}  // namespace credit

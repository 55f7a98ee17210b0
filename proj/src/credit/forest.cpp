#include "credit/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "util/rng.hpp"

namespace credit {

namespace {

double gini(std::size_t pos, std::size_t total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(pos) / static_cast<double>(total);
    return 2.0 * p * (1.0 - p);
}

struct TreeGrower {
    const FeatureMatrix& matrix;
    util::Rng rng;
    int max_depth;
    int min_samples_split;
    int mtry;
    std::vector<double>& importance;  // impurity decrease accumulator, size d

    // indices: row ids in this node (bootstrap sample rows, with repeats)
    void grow(std::vector<std::size_t>& indices, int depth) {
        const std::size_t total = indices.size();
        std::size_t pos = 0;
        for (std::size_t r : indices) pos += static_cast<std::size_t>(matrix.labels[r]);
        const double node_gini = gini(pos, total);
        if (depth >= max_depth || total < static_cast<std::size_t>(min_samples_split) || pos == 0 || pos == total) {
            return;
        }

        const auto candidates = rng.sample_without_replacement(static_cast<int>(matrix.feature_count()), mtry);

        double best_decrease = 0.0;
        int best_feature = -1;
        double best_threshold = 0.0;

        std::vector<std::pair<double, int>> values(total);  // (feature value, label)
        for (int f : candidates) {
            const auto& col = matrix.columns[static_cast<std::size_t>(f)];
            for (std::size_t i = 0; i < total; ++i) {
                values[i] = {col[indices[i]], matrix.labels[indices[i]]};
            }
            std::sort(values.begin(), values.end());

            // Scan split points between distinct consecutive values.
            std::size_t left_n = 0, left_pos = 0;
            for (std::size_t i = 0; i + 1 < total; ++i) {
                ++left_n;
                left_pos += static_cast<std::size_t>(values[i].second);
                if (values[i].first == values[i + 1].first) continue;
                const std::size_t right_n = total - left_n;
                const std::size_t right_pos = pos - left_pos;
                const double weighted = (static_cast<double>(left_n) * gini(left_pos, left_n) +
                                         static_cast<double>(right_n) * gini(right_pos, right_n)) /
                                        static_cast<double>(total);
                const double decrease = node_gini - weighted;
                if (decrease > best_decrease) {
                    best_decrease = decrease;
                    best_feature = f;
                    best_threshold = (values[i].first + values[i + 1].first) / 2.0;
                }
            }
        }

        if (best_feature < 0) return;

        // Weight by node fraction of the bootstrap sample.
        importance[static_cast<std::size_t>(best_feature)] +=
            best_decrease * static_cast<double>(total) / static_cast<double>(matrix.rows);

        std::vector<std::size_t> left, right;
        left.reserve(total);
        right.reserve(total);
        const auto& col = matrix.columns[static_cast<std::size_t>(best_feature)];
        for (std::size_t r : indices) {
            (col[r] <= best_threshold ? left : right).push_back(r);
        }
        indices.clear();
        indices.shrink_to_fit();
        grow(left, depth + 1);
        grow(right, depth + 1);
    }
};

}  // namespace

ImportanceReport feature_importance(const FeatureMatrix& matrix, const ForestConfig& config) {
    if (matrix.rows == 0 || matrix.feature_count() == 0) {
        throw std::invalid_argument("feature_importance: empty matrix");
    }
    const int pos_total = std::accumulate(matrix.labels.begin(), matrix.labels.end(), 0);
    if (pos_total == 0 || static_cast<std::size_t>(pos_total) == matrix.rows) {
        throw std::invalid_argument("feature_importance: labels contain a single class");
    }
    if (config.trees < 1) throw std::invalid_argument("feature_importance: need at least one tree");

    const std::size_t d = matrix.feature_count();
    const int mtry = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d)))));

    std::vector<std::vector<double>> per_tree(static_cast<std::size_t>(config.trees),
                                              std::vector<double>(d, 0.0));

#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < config.trees; ++t) {
        util::Rng rng(util::mix_seed(config.seed, static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> sample(matrix.rows);
        for (std::size_t i = 0; i < matrix.rows; ++i) {
            sample[i] = static_cast<std::size_t>(rng.uniform_index(matrix.rows));
        }
        TreeGrower grower{matrix, std::move(rng), config.max_depth, config.min_samples_split, mtry,
                          per_tree[static_cast<std::size_t>(t)]};
        grower.grow(sample, 0);
    }

    ImportanceReport report;
    report.names = matrix.names;
    report.values.assign(d, 0.0);
    for (int t = 0; t < config.trees; ++t) {
        for (std::size_t f = 0; f < d; ++f) {
            report.values[f] += per_tree[static_cast<std::size_t>(t)][f];
        }
    }
    double total = std::accumulate(report.values.begin(), report.values.end(), 0.0);
    if (total <= 0.0) {
        throw std::invalid_argument("feature_importance: no informative split found");
    }
    for (double& v : report.values) v /= total;
    return report;
}

}  // namespace credit

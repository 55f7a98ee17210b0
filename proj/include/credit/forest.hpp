#pragma once

#include <cstdint>
#include <vector>

#include "credit/dataset.hpp"

namespace credit {

struct ForestConfig {
    int trees = 100;
    int max_depth = 8;
    std::uint64_t seed = 0;
    int min_samples_split = 2;
};

/// Per-feature mean Gini impurity decrease across seeded bootstrap trees,
/// normalized to sum 1.
struct ImportanceReport {
    std::vector<std::string> names;
    std::vector<double> values;
};

/// CART forest grown on bootstrap resamples (fraction 1.0) with a random
/// sqrt(d) feature subset per node. Trees are independent and fitted in
/// parallel; importances are reduced in tree order, so the result only
/// depends on the seed. Throws when the labels are single-class or when no
/// split ever reduces impurity.
ImportanceReport feature_importance(const FeatureMatrix& matrix, const ForestConfig& config);

}  // namespace credit

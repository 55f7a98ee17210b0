#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace credit {

inline constexpr int kAttributeCount = 20;

/// One raw row of the German Credit file: 20 attribute tokens (categorical
/// codes like "A43" or integer text) plus the risk label.
struct RawCreditRecord {
    std::array<std::string, kAttributeCount> attributes;
    int label = 0;  // 0 = low risk (outcome 1), 1 = high risk (outcome 2)
};

/// Attribute names in file order (UCI codebook order).
const std::array<std::string, kAttributeCount>& attribute_names();

/// Parses the whitespace-separated 21-field format; outcome code 1 maps to
/// label 0, code 2 to label 1. Throws on wrong field counts or unknown
/// outcome codes.
std::vector<RawCreditRecord> parse_german_data(std::istream& in);
std::vector<RawCreditRecord> parse_german_data(const std::string& text);
std::vector<RawCreditRecord> load_german_data(const std::string& path);

/// Design matrix: categorical attributes one-hot expanded into one column
/// per observed code (named "attr=code"), numeric attributes z-scored over
/// the matrix (zero-variance columns become all zeros).
struct FeatureMatrix {
    std::size_t rows = 0;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;  // column-major
    std::vector<int> labels;

    std::size_t feature_count() const { return columns.size(); }
    double at(std::size_t row, std::size_t col) const { return columns[col][row]; }
};

/// An attribute counts as numeric when every observed value parses as an
/// integer; otherwise it is categorical and one-hot expanded (codes in
/// sorted order for a stable column layout).
FeatureMatrix one_hot_standardize(const std::vector<RawCreditRecord>& records);

/// Pearson correlation between two columns; 0 when either is constant.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace credit

#include "credit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace credit {

const std::array<std::string, kAttributeCount>& attribute_names() {
    static const std::array<std::string, kAttributeCount> names = {
        "checking_status",    "duration",           "credit_history",  "purpose",
        "credit_amount",      "savings",            "employment",      "installment_rate",
        "personal_status",    "other_debtors",      "residence_duration", "property",
        "age",                "other_installment_plans", "housing",    "existing_credits",
        "job",                "people_liable",      "telephone",       "foreign_worker",
    };
    return names;
}

std::vector<RawCreditRecord> parse_german_data(std::istream& in) {
    std::vector<RawCreditRecord> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> fields;
        std::string tok;
        while (ls >> tok) fields.push_back(tok);
        if (fields.empty()) continue;
        if (fields.size() != kAttributeCount + 1) {
            throw std::runtime_error("german data line " + std::to_string(lineno) + ": expected 21 fields, got " +
                                     std::to_string(fields.size()));
        }
        RawCreditRecord rec;
        for (int a = 0; a < kAttributeCount; ++a) rec.attributes[static_cast<std::size_t>(a)] = fields[static_cast<std::size_t>(a)];
        const std::string& outcome = fields[kAttributeCount];
        if (outcome == "1") {
            rec.label = 0;
        } else if (outcome == "2") {
            rec.label = 1;
        } else {
            throw std::runtime_error("german data line " + std::to_string(lineno) + ": unknown outcome code '" +
                                     outcome + "'");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<RawCreditRecord> parse_german_data(const std::string& text) {
    std::istringstream in(text);
    return parse_german_data(in);
}

std::vector<RawCreditRecord> load_german_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);
    return parse_german_data(in);
}

namespace {

bool parse_int(const std::string& s, long& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stol(s, &pos);
    } catch (...) {
        return false;
    }
    return pos == s.size();
}

}  // namespace

FeatureMatrix one_hot_standardize(const std::vector<RawCreditRecord>& records) {
    if (records.empty()) throw std::invalid_argument("one_hot_standardize: empty record set");
    const std::size_t rows = records.size();

    FeatureMatrix matrix;
    matrix.rows = rows;
    matrix.labels.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) matrix.labels[r] = records[r].label;

    for (int a = 0; a < kAttributeCount; ++a) {
        std::vector<long> numeric(rows);
        bool is_numeric = true;
        for (std::size_t r = 0; r < rows && is_numeric; ++r) {
            is_numeric = parse_int(records[r].attributes[static_cast<std::size_t>(a)], numeric[r]);
        }

        if (is_numeric) {
            std::vector<double> col(rows);
            double mean = 0.0;
            for (std::size_t r = 0; r < rows; ++r) mean += static_cast<double>(numeric[r]);
            mean /= static_cast<double>(rows);
            double var = 0.0;
            for (std::size_t r = 0; r < rows; ++r) {
                const double d = static_cast<double>(numeric[r]) - mean;
                var += d * d;
            }
            var /= static_cast<double>(rows);
            const double stddev = std::sqrt(var);
            for (std::size_t r = 0; r < rows; ++r) {
                col[r] = stddev > 0.0 ? (static_cast<double>(numeric[r]) - mean) / stddev : 0.0;
            }
            matrix.names.push_back(attribute_names()[static_cast<std::size_t>(a)]);
            matrix.columns.push_back(std::move(col));
        } else {
            std::map<std::string, std::size_t> codes;  // sorted for stable layout
            for (std::size_t r = 0; r < rows; ++r) codes.emplace(records[r].attributes[static_cast<std::size_t>(a)], 0);
            std::size_t next = matrix.columns.size();
            for (auto& [code, col_idx] : codes) {
                col_idx = next++;
                matrix.names.push_back(attribute_names()[static_cast<std::size_t>(a)] + "=" + code);
                matrix.columns.emplace_back(rows, 0.0);
            }
            for (std::size_t r = 0; r < rows; ++r) {
                matrix.columns[codes.at(records[r].attributes[static_cast<std::size_t>(a)])][r] = 1.0;
            }
        }
    }
    return matrix;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("pearson: size mismatch");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace credit

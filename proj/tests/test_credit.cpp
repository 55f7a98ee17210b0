#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "credit/dataset.hpp"
#include "credit/forest.hpp"
#include "credit/logistic.hpp"
#include "credit/pipeline.hpp"
#include "qubo/solvers.hpp"
#include "util/rng.hpp"

using credit::FeatureMatrix;
using credit::RawCreditRecord;

namespace {

// Synthetic rows in the german.data format: 3 categorical codes cycle per
// row, numeric fields derive from the row index.
std::string synthetic_german(int rows) {
    std::ostringstream out;
    for (int r = 0; r < rows; ++r) {
        out << "A1" << (r % 3 + 1);
        for (int a = 1; a < credit::kAttributeCount; ++a) {
            if (a % 2 == 1) {
                out << " " << (r * 7 + a) % 50;  // numeric attribute
            } else {
                out << " B" << a << (r % 2);  // categorical attribute
            }
        }
        out << " " << (r % 10 < 7 ? 1 : 2) << "\n";
    }
    return out.str();
}

FeatureMatrix synthetic_matrix(util::Rng& rng, std::size_t rows, std::size_t informative_noise = 0) {
    // column 0: informative (positively separates the classes)
    // remaining columns: pure noise
    FeatureMatrix m;
    m.rows = rows;
    m.labels.resize(rows);
    std::vector<double> signal(rows), noise;
    for (std::size_t r = 0; r < rows; ++r) {
        m.labels[r] = rng.bernoulli(0.5) ? 1 : 0;
        signal[r] = (m.labels[r] ? 1.5 : -1.5) + rng.normal(0.0, 0.3);
    }
    m.names.push_back("informative");
    m.columns.push_back(signal);
    for (std::size_t f = 0; f < informative_noise; ++f) {
        std::vector<double> col(rows);
        for (auto& v : col) v = rng.normal();
        m.names.push_back("noise" + std::to_string(f));
        m.columns.push_back(std::move(col));
    }
    return m;
}

}  // namespace

TEST_CASE("parse_german_data basics") {
    SUBCASE("empty input gives an empty sequence") {
        CHECK(credit::parse_german_data(std::string{}).empty());
    }
    SUBCASE("synthetic rows parse with the right labels") {
        const auto records = credit::parse_german_data(synthetic_german(20));
        REQUIRE(records.size() == 20);
        int high = 0;
        for (const auto& r : records) high += r.label;
        CHECK(high == 6);  // rows 7,8,9 of each block of 10
        CHECK(records[0].attributes[0] == "A11");
    }
    SUBCASE("wrong field count is rejected") {
        CHECK_THROWS(credit::parse_german_data(std::string{"A11 6 A34\n"}));
    }
    SUBCASE("unknown outcome code is rejected") {
        std::string line;
        for (int i = 0; i < 20; ++i) line += "A11 ";
        line += "3\n";
        CHECK_THROWS(credit::parse_german_data(line));
    }
}

TEST_CASE("one_hot_standardize structure") {
    const auto records = credit::parse_german_data(synthetic_german(30));
    const auto matrix = credit::one_hot_standardize(records);
    CHECK(matrix.rows == 30);

    SUBCASE("one-hot groups sum to one per row") {
        // attribute 0 expands to codes A11, A12, A13
        std::vector<std::size_t> group;
        for (std::size_t f = 0; f < matrix.feature_count(); ++f) {
            if (matrix.names[f].starts_with("checking_status=")) group.push_back(f);
        }
        REQUIRE(group.size() == 3);
        for (std::size_t r = 0; r < matrix.rows; ++r) {
            double sum = 0.0;
            for (std::size_t f : group) sum += matrix.at(r, f);
            CHECK(sum == 1.0);
        }
    }

    SUBCASE("numeric columns are z-scored") {
        for (std::size_t f = 0; f < matrix.feature_count(); ++f) {
            if (matrix.names[f].find('=') != std::string::npos) continue;
            double mean = 0.0, var = 0.0;
            for (std::size_t r = 0; r < matrix.rows; ++r) mean += matrix.at(r, f);
            mean /= static_cast<double>(matrix.rows);
            for (std::size_t r = 0; r < matrix.rows; ++r) {
                const double d = matrix.at(r, f) - mean;
                var += d * d;
            }
            var /= static_cast<double>(matrix.rows);
            CHECK(std::abs(mean) < 1e-9);
            CHECK(std::abs(var - 1.0) < 1e-9);
        }
    }

    SUBCASE("constant numeric column standardizes to zeros") {
        std::vector<RawCreditRecord> rows(4);
        for (auto& r : rows) {
            r.attributes.fill("7");  // every attribute numeric-constant
            r.label = 0;
        }
        rows[0].label = 1;
        const auto m = credit::one_hot_standardize(rows);
        for (std::size_t f = 0; f < m.feature_count(); ++f) {
            for (std::size_t r = 0; r < m.rows; ++r) CHECK(m.at(r, f) == 0.0);
        }
    }

    SUBCASE("empty input is rejected") {
        CHECK_THROWS_AS(credit::one_hot_standardize({}), std::invalid_argument);
    }
}

TEST_CASE("forest importance identifies the label column") {
    util::Rng rng(3);
    // duplicate the label as a feature: a perfect split lives there
    FeatureMatrix m = synthetic_matrix(rng, 200, 4);
    std::vector<double> label_copy(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) label_copy[r] = m.labels[r];
    m.names.insert(m.names.begin(), "label_copy");
    m.columns.insert(m.columns.begin(), label_copy);

    credit::ForestConfig cfg;
    cfg.trees = 30;
    cfg.seed = 9;
    const auto report = credit::feature_importance(m, cfg);
    std::size_t best = 0;
    for (std::size_t f = 1; f < report.values.size(); ++f) {
        if (report.values[f] > report.values[best]) best = f;
    }
    CHECK(report.names[best] == "label_copy");
}

TEST_CASE("forest importance separates signal from noise and normalizes") {
    util::Rng rng(5);
    const FeatureMatrix m = synthetic_matrix(rng, 300, 5);
    credit::ForestConfig cfg;
    cfg.trees = 50;
    cfg.seed = 1;
    const auto report = credit::feature_importance(m, cfg);

    double total = 0.0;
    for (double v : report.values) {
        CHECK(v >= 0.0);
        total += v;
    }
    CHECK(std::abs(total - 1.0) < 1e-9);

    for (std::size_t f = 1; f < report.values.size(); ++f) {
        CHECK(report.values[0] > report.values[f]);  // informative beats noise
    }
}

TEST_CASE("forest importance is deterministic per seed and rejects single-class labels") {
    util::Rng rng(8);
    const FeatureMatrix m = synthetic_matrix(rng, 100, 3);
    credit::ForestConfig cfg;
    cfg.trees = 20;
    cfg.seed = 4;
    const auto a = credit::feature_importance(m, cfg);
    const auto b = credit::feature_importance(m, cfg);
    CHECK(a.values == b.values);

    FeatureMatrix single = m;
    std::fill(single.labels.begin(), single.labels.end(), 0);
    CHECK_THROWS_AS(credit::feature_importance(single, cfg), std::invalid_argument);
}

TEST_CASE("build_feature_qubo worked examples") {
    credit::SelectionConfig cfg;  // alpha 0.5, beta 2.0

    SUBCASE("two uncorrelated features") {
        const std::vector<double> imp{0.9, 0.1};
        const std::vector<std::vector<double>> corr{{0.0, 0.0}, {0.0, 0.0}};
        const auto model = credit::build_feature_qubo(imp, corr, cfg);
        CHECK(model.linear(0) == doctest::Approx(-1.3));
        CHECK(model.linear(1) == doctest::Approx(0.3));

        const auto chosen = credit::solve_feature_qubo(model, credit::SolverConfig{});
        CHECK(chosen == qubo::Assignment{1, 0});
    }

    SUBCASE("all-zero importances force the cheapest single feature") {
        const std::vector<double> imp{0.0, 0.0, 0.0};
        const std::vector<std::vector<double>> corr(3, std::vector<double>(3, 0.0));
        const auto model = credit::build_feature_qubo(imp, corr, cfg);
        const auto chosen = credit::solve_feature_qubo(model, credit::SolverConfig{});
        CHECK(chosen == qubo::Assignment{1, 0, 0});  // index tie-break
    }

    SUBCASE("perfectly correlated duplicates pick exactly one") {
        const std::vector<double> imp{0.4, 0.4};
        const std::vector<std::vector<double>> corr{{1.0, 1.0}, {1.0, 1.0}};
        const auto model = credit::build_feature_qubo(imp, corr, cfg);
        // enumerate: f(10) = f(01) = 0.5 - 0.8 = -0.3; f(11) = -0.6 + 0.5 = -0.1
        const auto chosen = credit::solve_feature_qubo(model, credit::SolverConfig{});
        CHECK(chosen == qubo::Assignment{1, 0});
    }

    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(credit::build_feature_qubo({0.5}, {{0.0}, {0.0, 0.0}}, cfg), std::invalid_argument);
    }
}

TEST_CASE("stratified split preserves the class ratio") {
    std::vector<int> labels(1000);
    for (std::size_t i = 0; i < 1000; ++i) labels[i] = i < 700 ? 0 : 1;
    const auto split = credit::stratified_split(labels, {0.3, 42});
    CHECK(split.test.size() == 300);
    CHECK(split.train.size() == 700);

    std::size_t test_high = 0;
    for (std::size_t r : split.test) test_high += static_cast<std::size_t>(labels[r]);
    CHECK(test_high == 90);  // 30% of 300, exactly stratified

    // ratio preserved to within one sample for odd counts too
    std::vector<int> odd(97);
    for (std::size_t i = 0; i < odd.size(); ++i) odd[i] = i < 61 ? 0 : 1;
    const auto s2 = credit::stratified_split(odd, {0.3, 7});
    double ratio_all = 61.0 / 97.0;
    std::size_t zeros = 0;
    for (std::size_t r : s2.test) zeros += (odd[r] == 0);
    CHECK(std::abs(static_cast<double>(zeros) - ratio_all * static_cast<double>(s2.test.size())) <= 1.0);
}

TEST_CASE("classification report against hand-computed confusion matrices") {
    // truth:     0 0 0 0 1 1
    // predicted: 0 0 1 0 1 0
    const std::vector<int> truth{0, 0, 0, 0, 1, 1};
    const std::vector<int> pred{0, 0, 1, 0, 1, 0};
    const auto report = credit::classification_report(truth, pred);
    CHECK(report.support[0] == 4);
    CHECK(report.support[1] == 2);
    CHECK(report.accuracy == doctest::Approx(4.0 / 6.0));
    CHECK(report.recall[0] == doctest::Approx(3.0 / 4.0));
    CHECK(report.recall[1] == doctest::Approx(0.5));
    CHECK(report.precision[0] == doctest::Approx(3.0 / 4.0));
    CHECK(report.precision[1] == doctest::Approx(0.5));
    for (int c = 0; c < 2; ++c) {
        const double p = report.precision[static_cast<std::size_t>(c)];
        const double r = report.recall[static_cast<std::size_t>(c)];
        CHECK(report.f1[static_cast<std::size_t>(c)] == doctest::Approx(2 * p * r / (p + r)));
    }

    SUBCASE("all-one-class predictions on a 210/90 split give 0.70 exactly") {
        std::vector<int> t(300), p(300, 0);
        for (std::size_t i = 0; i < 300; ++i) t[i] = i < 210 ? 0 : 1;
        const auto rep = credit::classification_report(t, p);
        CHECK(rep.accuracy == doctest::Approx(0.70));
        CHECK(rep.recall[0] == doctest::Approx(1.0));
        CHECK(rep.recall[1] == 0.0);
        CHECK(rep.precision[1] == 0.0);  // no positive predictions
        CHECK(rep.f1[1] == 0.0);
    }
}

TEST_CASE("logistic regression reaches accuracy 1 on separable data") {
    util::Rng rng(12);
    const FeatureMatrix m = synthetic_matrix(rng, 400, 2);
    const auto result = credit::train_and_evaluate(m, {0}, {0.3, 3}, {});
    CHECK(result.report.accuracy == doctest::Approx(1.0));
}

TEST_CASE("logistic fit rejects degenerate inputs") {
    util::Rng rng(1);
    const FeatureMatrix m = synthetic_matrix(rng, 50, 0);
    credit::LogisticModel model;
    CHECK_THROWS_AS(model.fit({}, {0, 1}, m.labels, {}), std::invalid_argument);
    CHECK_THROWS_AS(model.fit(m.columns, {}, m.labels, {}), std::invalid_argument);

    std::vector<std::size_t> one_class;
    for (std::size_t r = 0; r < m.rows; ++r) {
        if (m.labels[r] == 0) one_class.push_back(r);
    }
    CHECK_THROWS_AS(model.fit(m.columns, one_class, m.labels, {}), std::invalid_argument);
}

TEST_CASE("select_features end to end on synthetic data") {
    util::Rng rng(23);
    const FeatureMatrix m = synthetic_matrix(rng, 300, 6);
    credit::ForestConfig fc;
    fc.trees = 40;
    fc.seed = 2;
    const auto report = credit::feature_importance(m, fc);

    SUBCASE("degenerate threshold signals an empty candidate set") {
        credit::SelectionConfig sc;
        sc.importance_threshold = 1.0;
        CHECK_THROWS_AS(credit::select_features(m, report, sc, {}), std::invalid_argument);
    }

    SUBCASE("single-feature candidate set selects that feature") {
        credit::SelectionConfig sc;
        sc.importance_threshold = 0.5;  // only the informative column survives
        const auto sel = credit::select_features(m, report, sc, {});
        REQUIRE(sel.selected_names.size() == 1);
        CHECK(sel.selected_names[0] == "informative");
    }

    SUBCASE("default config returns a non-empty selection") {
        const auto sel = credit::select_features(m, report, {}, {});
        CHECK(!sel.selected_names.empty());
    }
}

TEST_CASE("pipeline is deterministic end to end") {
    const auto records = credit::parse_german_data(synthetic_german(120));
    credit::PipelineConfig cfg;
    cfg.forest.trees = 25;
    cfg.forest.seed = 3;
    cfg.solver.seed = 3;
    cfg.split.seed = 3;

    const auto a = credit::run_pipeline(records, cfg);
    const auto b = credit::run_pipeline(records, cfg);
    CHECK(a.selection.selected_names == b.selection.selected_names);
    CHECK(a.evaluation.report.accuracy == b.evaluation.report.accuracy);
    CHECK(a.importance.values == b.importance.values);
    CHECK(!a.selection.selected_names.empty());
}

#include "credit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qubo/solvers.hpp"

namespace credit {

void SelectionConfig::validate() const {
    for (double v : {alpha, beta, big_m, importance_threshold}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("SelectionConfig: parameters must be finite and >= 0");
        }
    }
}

qubo::QuboModel build_feature_qubo(const std::vector<double>& importances,
                                   const std::vector<std::vector<double>>& abs_correlation,
                                   const SelectionConfig& config) {
    config.validate();
    const int n = static_cast<int>(importances.size());
    if (n == 0) throw std::invalid_argument("build_feature_qubo: empty candidate set");
    if (abs_correlation.size() != importances.size()) {
        throw std::invalid_argument("build_feature_qubo: correlation matrix dimension mismatch");
    }
    for (const auto& row : abs_correlation) {
        if (row.size() != importances.size()) {
            throw std::invalid_argument("build_feature_qubo: correlation matrix must be square");
        }
    }

    qubo::QuboModel model(n);
    for (int i = 0; i < n; ++i) {
        model.set_linear(i, config.alpha - config.beta * importances[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double c = config.alpha * std::abs(abs_correlation[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            if (c != 0.0) model.set_quadratic(i, j, c);
        }
    }
    return model;
}

namespace {

qubo::Assignment cheapest_single(const qubo::QuboModel& model) {
    int best = 0;
    for (int i = 1; i < model.size(); ++i) {
        if (model.linear(i) < model.linear(best)) best = i;  // ties keep the lower index
    }
    qubo::Assignment x(static_cast<std::size_t>(model.size()), 0);
    x[static_cast<std::size_t>(best)] = 1;
    return x;
}

}  // namespace

qubo::Assignment solve_feature_qubo(const qubo::QuboModel& model, const SolverConfig& solver) {
    const int n = model.size();

    if (n <= solver.exact_limit) {
        // Exhaustive scan over codes 1..2^n-1 (all-zero excluded up front).
        qubo::Assignment x(static_cast<std::size_t>(n), 0);
        qubo::Assignment best;
        double best_value = 0.0;
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t code = 1; code < total; ++code) {
            for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (code >> i) & 1;
            const double value = model.evaluate(x);
            if (best.empty() || value < best_value) {
                best = x;
                best_value = value;
            }
        }
        return best;
    }

    qubo::AnnealSchedule schedule;
    schedule.seed = solver.seed;
    schedule.sweeps = solver.anneal_sweeps;
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(model.linear(i)));
    schedule.initial_temp = std::max(1.0, 2.0 * scale);
    schedule.final_temp = 0.01;
    const qubo::Solution sol = qubo::simulated_anneal(model, schedule);
    if (qubo::assignment_code(sol.assignment) != 0) return sol.assignment;
    return cheapest_single(model);
}

SelectionResult select_features(const FeatureMatrix& matrix, const ImportanceReport& report,
                                const SelectionConfig& config, const SolverConfig& solver) {
    config.validate();
    if (report.values.size() != matrix.feature_count()) {
        throw std::invalid_argument("select_features: report does not match matrix");
    }

    std::vector<std::size_t> candidates;
    for (std::size_t f = 0; f < report.values.size(); ++f) {
        if (report.values[f] >= config.importance_threshold) candidates.push_back(f);
    }
    if (candidates.empty()) {
        throw std::invalid_argument("select_features: importance threshold removed every feature");
    }

    SelectionResult result;
    std::vector<double> importances;
    for (std::size_t f : candidates) {
        result.candidate_names.push_back(report.names[f]);
        importances.push_back(report.values[f]);
    }
    result.candidate_importances = importances;

    const std::size_t m = candidates.size();
    std::vector<std::vector<double>> corr(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double c = std::abs(pearson(matrix.columns[candidates[i]], matrix.columns[candidates[j]]));
            corr[i][j] = c;
            corr[j][i] = c;
        }
    }

    const qubo::QuboModel model = build_feature_qubo(importances, corr, config);
    const qubo::Assignment chosen = solve_feature_qubo(model, solver);
    result.objective_value = model.evaluate(chosen);

    for (std::size_t i = 0; i < m; ++i) {
        if (chosen[i]) {
            result.selected_columns.push_back(candidates[i]);
            result.selected_names.push_back(report.names[candidates[i]]);
        }
    }
    return result;
}

PipelineResult run_pipeline(const std::vector<RawCreditRecord>& records, const PipelineConfig& config) {
    PipelineResult result;
    const FeatureMatrix matrix = one_hot_standardize(records);
    result.expanded_feature_count = matrix.feature_count();
    result.importance = feature_importance(matrix, config.forest);
    result.selection = select_features(matrix, result.importance, config.selection, config.solver);
    result.evaluation = train_and_evaluate(matrix, result.selection.selected_columns, config.split, config.logistic);
    return result;
}

}  // namespace credit

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "credit/dataset.hpp"
#include "credit/forest.hpp"
#include "credit/logistic.hpp"
#include "qubo/model.hpp"

namespace credit {

struct SelectionConfig {
    double alpha = 0.5;              // per-feature cost
    double beta = 2.0;               // importance reward
    double big_m = 10.0;             // soft non-empty penalty, reporting only
    double importance_threshold = 0.01;

    void validate() const;
};

/// Feature-selection objective over the candidate set:
///   a_i = alpha - beta * importance_i
///   b_ij = alpha * |corr_ij|   (i < j)
/// The "at least one feature" constraint is enforced by excluding the
/// all-zero assignment in solve_feature_qubo, not by a penalty term; big_m
/// only scales the soft-penalty value reported alongside results.
qubo::QuboModel build_feature_qubo(const std::vector<double>& importances,
                                   const std::vector<std::vector<double>>& abs_correlation,
                                   const SelectionConfig& config);

struct SolverConfig {
    std::uint64_t seed = 0;
    int anneal_sweeps = 4000;
    int exact_limit = 22;  // exhaustive enumeration up to this many candidates
};

/// Minimizes the selection objective with the empty set excluded: exact
/// enumeration for small models, seeded annealing above that (falling back
/// to the cheapest single feature if the anneal lands on all-zero).
qubo::Assignment solve_feature_qubo(const qubo::QuboModel& model, const SolverConfig& solver);

struct SelectionResult {
    std::vector<std::string> candidate_names;  // after the importance threshold
    std::vector<double> candidate_importances;
    std::vector<std::size_t> selected_columns;  // indices into the FeatureMatrix
    std::vector<std::string> selected_names;
    double objective_value = 0.0;
};

/// Threshold filter -> correlation matrix -> QUBO -> solve. Throws when the
/// threshold removes every candidate. Never returns an empty selection.
SelectionResult select_features(const FeatureMatrix& matrix, const ImportanceReport& report,
                                const SelectionConfig& config, const SolverConfig& solver);

struct PipelineConfig {
    SelectionConfig selection;
    ForestConfig forest;
    SolverConfig solver;
    SplitConfig split;
    LogisticConfig logistic;
};

struct PipelineResult {
    std::size_t expanded_feature_count = 0;
    ImportanceReport importance;
    SelectionResult selection;
    EvaluationResult evaluation;
};

/// Full run on parsed records: expansion, forest importances, QUBO
/// selection, logistic evaluation on a stratified 30% hold-out.
PipelineResult run_pipeline(const std::vector<RawCreditRecord>& records, const PipelineConfig& config);

}  // namespace credit

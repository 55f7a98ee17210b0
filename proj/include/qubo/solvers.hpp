#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qubo/model.hpp"

namespace qubo {

/// Geometric-decay Metropolis schedule. Stands in for an annealing device:
/// anything that minimizes the Ising/QUBO energy fits behind the same call.
struct AnnealSchedule {
    double initial_temp = 10.0;
    double final_temp = 0.05;
    int sweeps = 2000;  // one sweep proposes each variable once
    std::uint64_t seed = 0;

    void validate() const;
};

struct Solution {
    Assignment assignment;
    double value = 0.0;
    std::uint64_t evaluations = 0;  // objective/delta evaluations consumed
};

enum class StrategyKind { Random, Influence, KOpt };

struct ExtractionStrategy {
    StrategyKind kind = StrategyKind::Random;
    int subset_size = 0;
    int k = 2;  // KOpt only: maximum flip-set size of the local search

    void validate(int n) const;
};

/// Inner solver of the hybrid loop: exact enumeration of the sub-model or a
/// seeded anneal over it.
struct InnerSolver {
    enum class Kind { Exact, Anneal } kind = Kind::Exact;
    AnnealSchedule schedule;  // Anneal only

    static InnerSolver exact() { return {Kind::Exact, {}}; }
    static InnerSolver anneal(const AnnealSchedule& s) { return {Kind::Anneal, s}; }
};

/// Exhaustive minimization, n <= 24. Ties broken toward the assignment with
/// the lowest binary encoding (bit i = x_i).
Solution brute_force_solve(const QuboModel& model);

/// Metropolis annealing with geometric temperature decay; deterministic for
/// a fixed seed. Returns the best assignment seen.
Solution simulated_anneal(const QuboModel& model, const AnnealSchedule& schedule);

/// Signed single-flip objective deltas at `current`:
/// entry i = f(flip_i(current)) - f(current), computed literally.
std::vector<double> influence_values(const QuboModel& model, const Assignment& current);

/// Chooses the free-variable subset for the next sub-QUBO. Returned indices
/// are ascending.
std::vector<int> extract_subset(const QuboModel& model, const Assignment& current,
                                const ExtractionStrategy& strategy, std::uint64_t seed);

/// Iterated sub-QUBO refinement: extract a subset, clamp the complement,
/// solve the reduced model, merge back when the objective does not get
/// worse. Returns the best assignment over all iterations. Starts from a
/// seeded random assignment unless `initial` is given.
Solution hybrid_solve(const QuboModel& model, const ExtractionStrategy& strategy, int iterations,
                      const InnerSolver& inner, std::uint64_t seed,
                      const std::optional<Assignment>& initial = std::nullopt);

}  // namespace qubo

#include "qubo/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "util/rng.hpp"

namespace qubo {

void AnnealSchedule::validate() const {
    if (!(initial_temp >= final_temp) || !(final_temp > 0.0)) {
        throw std::invalid_argument("AnnealSchedule: requires initial_temp >= final_temp > 0");
    }
    if (sweeps < 1) throw std::invalid_argument("AnnealSchedule: requires sweeps >= 1");
}

void ExtractionStrategy::validate(int n) const {
    if (subset_size < 1 || subset_size > n) {
        throw std::invalid_argument("ExtractionStrategy: subset_size must be in [1, n]");
    }
    if (kind == StrategyKind::KOpt && k < 1) {
        throw std::invalid_argument("ExtractionStrategy: k must be >= 1");
    }
}

Solution brute_force_solve(const QuboModel& model) {
    model.validate();
    const int n = model.size();
    if (n > 24) throw std::invalid_argument("brute_force_solve: dimension too large (n <= 24)");

    Assignment x(static_cast<std::size_t>(n), 0);
    double value = 0.0;  // objective at the all-zero assignment
    double best_value = value;
    std::uint64_t best_code = 0;
    const std::uint64_t total = std::uint64_t{1} << n;

    // Gray-code walk: consecutive codes differ in one bit, so each step is a
    // single flip_delta. The running value can drift by rounding, so the
    // winner is re-evaluated exactly at the end.
    for (std::uint64_t counter = 1; counter < total; ++counter) {
        const int bit = std::countr_zero(counter);
        value += model.flip_delta(x, bit);
        x[static_cast<std::size_t>(bit)] ^= 1;
        const std::uint64_t code = assignment_code(x);
        if (value < best_value || (value == best_value && code < best_code)) {
            best_value = value;
            best_code = code;
        }
    }

    Solution sol;
    sol.assignment.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        sol.assignment[static_cast<std::size_t>(i)] = (best_code >> i) & 1;
    }
    sol.value = model.evaluate(sol.assignment);
    sol.evaluations = total;
    return sol;
}

Solution simulated_anneal(const QuboModel& model, const AnnealSchedule& schedule) {
    model.validate();
    schedule.validate();
    const int n = model.size();
    util::Rng rng(schedule.seed);

    Assignment x(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = rng.bernoulli(0.5) ? 1 : 0;

    double value = model.evaluate(x);
    Assignment best = x;
    double best_value = value;
    std::uint64_t evaluations = 1;

    const double decay = schedule.sweeps > 1
                             ? std::pow(schedule.final_temp / schedule.initial_temp, 1.0 / (schedule.sweeps - 1))
                             : 1.0;
    double temp = schedule.initial_temp;

    for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
        for (int i = 0; i < n; ++i) {
            const double delta = model.flip_delta(x, i);
            ++evaluations;
            if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temp)) {
                x[static_cast<std::size_t>(i)] ^= 1;
                value += delta;
                if (value < best_value) {
                    best_value = value;
                    best = x;
                }
            }
        }
        temp *= decay;
    }

    Solution sol;
    sol.assignment = std::move(best);
    sol.value = model.evaluate(sol.assignment);
    sol.evaluations = evaluations;
    return sol;
}

std::vector<double> influence_values(const QuboModel& model, const Assignment& current) {
    const int n = model.size();
    if (static_cast<int>(current.size()) != n) {
        throw std::invalid_argument("influence_values: assignment length does not match model dimension");
    }
    const double base = model.evaluate(current);
    std::vector<double> values(static_cast<std::size_t>(n), 0.0);
    Assignment flipped = current;
    for (int i = 0; i < n; ++i) {
        flipped[static_cast<std::size_t>(i)] ^= 1;
        values[static_cast<std::size_t>(i)] = model.evaluate(flipped) - base;
        flipped[static_cast<std::size_t>(i)] ^= 1;
    }
    return values;
}

namespace {

std::vector<int> influence_subset(const QuboModel& model, const Assignment& current, int subset_size) {
    const auto values = influence_values(model, current);
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double va = std::abs(values[static_cast<std::size_t>(a)]);
        const double vb = std::abs(values[static_cast<std::size_t>(b)]);
        if (va != vb) return va > vb;
        return a < b;
    });
    order.resize(static_cast<std::size_t>(subset_size));
    std::sort(order.begin(), order.end());
    return order;
}

// First-improvement pass over flip sets of size 1..k in lexicographic order,
// applied greedily to a scratch copy of `current`. Only k in {1, 2} is
// enumerated explicitly; larger k falls back to repeated pair passes, which
// is what the default configuration uses anyway.
std::vector<int> kopt_subset(const QuboModel& model, const Assignment& current, int subset_size, int k,
                             util::Rng& rng) {
    const int n = model.size();
    Assignment x = current;
    std::vector<std::uint8_t> touched(static_cast<std::size_t>(n), 0);
    int touched_count = 0;

    auto mark = [&](int i) {
        if (!touched[static_cast<std::size_t>(i)]) {
            touched[static_cast<std::size_t>(i)] = 1;
            ++touched_count;
        }
    };

    for (int i = 0; i < n && touched_count < subset_size; ++i) {
        if (model.flip_delta(x, i) < 0.0) {
            x[static_cast<std::size_t>(i)] ^= 1;
            mark(i);
        }
    }
    if (k >= 2) {
        for (int i = 0; i < n && touched_count < subset_size; ++i) {
            for (int j = i + 1; j < n && touched_count < subset_size; ++j) {
                const double di = model.flip_delta(x, i);
                x[static_cast<std::size_t>(i)] ^= 1;
                const double dj = model.flip_delta(x, j);
                x[static_cast<std::size_t>(i)] ^= 1;
                if (di + dj < 0.0) {
                    x[static_cast<std::size_t>(i)] ^= 1;
                    x[static_cast<std::size_t>(j)] ^= 1;
                    mark(i);
                    mark(j);
                }
            }
        }
    }

    std::vector<int> subset;
    subset.reserve(static_cast<std::size_t>(subset_size));
    for (int i = 0; i < n; ++i) {
        if (touched[static_cast<std::size_t>(i)]) subset.push_back(i);
    }
    while (static_cast<int>(subset.size()) > subset_size) subset.pop_back();

    if (static_cast<int>(subset.size()) < subset_size) {
        std::vector<int> rest;
        for (int i = 0; i < n; ++i) {
            if (!touched[static_cast<std::size_t>(i)]) rest.push_back(i);
        }
        rng.shuffle(rest);
        for (int i = 0; static_cast<int>(subset.size()) < subset_size; ++i) {
            subset.push_back(rest[static_cast<std::size_t>(i)]);
        }
    }
    std::sort(subset.begin(), subset.end());
    return subset;
}

}  // namespace

std::vector<int> extract_subset(const QuboModel& model, const Assignment& current,
                                const ExtractionStrategy& strategy, std::uint64_t seed) {
    const int n = model.size();
    strategy.validate(n);
    if (static_cast<int>(current.size()) != n) {
        throw std::invalid_argument("extract_subset: assignment length does not match model dimension");
    }
    util::Rng rng(seed);
    switch (strategy.kind) {
        case StrategyKind::Random:
            return rng.sample_without_replacement(n, strategy.subset_size);
        case StrategyKind::Influence:
            return influence_subset(model, current, strategy.subset_size);
        case StrategyKind::KOpt:
            return kopt_subset(model, current, strategy.subset_size, strategy.k, rng);
    }
    throw std::logic_error("extract_subset: unreachable");
}

Solution hybrid_solve(const QuboModel& model, const ExtractionStrategy& strategy, int iterations,
                      const InnerSolver& inner, std::uint64_t seed,
                      const std::optional<Assignment>& initial) {
    model.validate();
    const int n = model.size();
    strategy.validate(n);
    if (iterations < 0) throw std::invalid_argument("hybrid_solve: negative iteration count");

    util::Rng rng(util::mix_seed(seed, 0));
    Assignment x;
    if (initial) {
        if (static_cast<int>(initial->size()) != n) {
            throw std::invalid_argument("hybrid_solve: initial assignment length mismatch");
        }
        x = *initial;
    } else {
        x.assign(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = rng.bernoulli(0.5) ? 1 : 0;
    }

    double value = model.evaluate(x);
    std::uint64_t evaluations = 1;
    Assignment best = x;
    double best_value = value;

    for (int it = 0; it < iterations; ++it) {
        const auto subset = extract_subset(model, x, strategy, util::mix_seed(seed, 2 * static_cast<std::uint64_t>(it) + 1));

        std::unordered_map<int, std::uint8_t> clamped;
        clamped.reserve(static_cast<std::size_t>(n - static_cast<int>(subset.size())));
        std::size_t next = 0;
        for (int i = 0; i < n; ++i) {
            if (next < subset.size() && subset[next] == i) {
                ++next;
            } else {
                clamped.emplace(i, x[static_cast<std::size_t>(i)]);
            }
        }
        const SubQubo sub = fix_variables(model, clamped);

        Solution inner_sol;
        if (inner.kind == InnerSolver::Kind::Exact) {
            inner_sol = brute_force_solve(sub.model);
        } else {
            AnnealSchedule schedule = inner.schedule;
            schedule.seed = util::mix_seed(seed, 2 * static_cast<std::uint64_t>(it) + 2);
            inner_sol = simulated_anneal(sub.model, schedule);
        }
        evaluations += inner_sol.evaluations;

        Assignment candidate = x;
        merge_assignment(candidate, sub.free, inner_sol.assignment);
        const double candidate_value = model.evaluate(candidate);
        ++evaluations;

        // <= keeps plateau moves available on degenerate objectives.
        if (candidate_value <= value) {
            x = std::move(candidate);
            value = candidate_value;
            if (value < best_value) {
                best_value = value;
                best = x;
            }
        }
    }

    Solution sol;
    sol.assignment = std::move(best);
    sol.value = model.evaluate(sol.assignment);
    sol.evaluations = evaluations;
    return sol;
}

}  // namespace qubo

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace qubo {

/// A 0/1 assignment of the model's decision variables; bit i is variable i.
using Assignment = std::vector<std::uint8_t>;

/// Returns the integer whose bit i equals x[i] (used for deterministic
/// tie-breaking between equal-value assignments).
std::uint64_t assignment_code(const Assignment& x);

/// Quadratic objective over binary variables,
///
///   f(x) = sum_i linear(i) x_i + sum_{i<j} quadratic(i,j) x_i x_j,
///
/// with each unordered pair stored once. Minimization is always implied.
class QuboModel {
public:
    QuboModel() = default;
    explicit QuboModel(int n);

    int size() const { return n_; }

    double linear(int i) const;
    void set_linear(int i, double coefficient);
    void add_linear(int i, double coefficient);

    /// Coefficient of x_i x_j (0 when the pair is absent). Requires i != j.
    double quadratic(int i, int j) const;
    void set_quadratic(int i, int j, double coefficient);
    void add_quadratic(int i, int j, double coefficient);

    const std::vector<double>& linear_terms() const { return linear_; }

    /// Stored pairs as (i, j, coefficient) with i < j, sorted lexicographically.
    std::vector<std::tuple<int, int, double>> quadratic_terms() const;

    /// Row view of the symmetric coupling matrix: row(i)[j] == quadratic(i,j),
    /// row(i)[i] == 0. Backing storage is dense n*n.
    std::span<const double> row(int i) const;

    double evaluate(const Assignment& x) const;

    /// Objective change from flipping variable i at assignment x.
    double flip_delta(const Assignment& x, int i) const;

    /// Throws std::invalid_argument when any coefficient is non-finite.
    void validate() const;

private:
    void check_index(int i) const;
    void check_pair(int i, int j) const;

    int n_ = 0;
    std::vector<double> linear_;
    std::vector<double> quad_;  // dense symmetric, diagonal zero
};

/// Spin-variable (s in {-1,+1}) form: energy(s) = offset + sum h_i s_i
/// + sum_{i<j} J_ij s_i s_j.
struct IsingModel {
    int n = 0;
    std::vector<double> field;     // h_i
    std::vector<double> coupling;  // dense symmetric J, diagonal zero
    double offset = 0.0;

    double coupling_at(int i, int j) const { return coupling[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
    double energy(const std::vector<int>& spins) const;
};

/// Exact spin form under x_i = (1 + s_i) / 2:
///   h_i = a_i/2 + sum_j b_ij/4,  J_ij = b_ij/4,
///   offset = sum_i a_i/2 + sum_{i<j} b_ij/4.
IsingModel to_ising(const QuboModel& model);

/// Reduced model over the free variables after clamping the rest, plus the
/// constant absorbed from the clamped part. For every assignment y of the
/// free set, sub.model.evaluate(y) + sub.constant equals the parent
/// objective at merge(y, fixed).
struct SubQubo {
    std::vector<int> free;  // parent indices of the sub-model variables, ascending
    QuboModel model;        // over free.size() variables
    double constant = 0.0;
};

SubQubo fix_variables(const QuboModel& model, const std::unordered_map<int, std::uint8_t>& fixed);

/// Writes y's bits into x at the positions listed in free.
void merge_assignment(Assignment& x, const std::vector<int>& free, const Assignment& y);

// Text format: `n <dim>` header, then `lin <i> <coef>` and
// `quad <i> <j> <coef>` lines (i < j on write). '#' starts a comment.
QuboModel read_qubo(std::istream& in);
QuboModel read_qubo_file(const std::string& path);
void write_qubo(std::ostream& out, const QuboModel& model);
void write_qubo_file(const std::string& path, const QuboModel& model);

}  // namespace qubo

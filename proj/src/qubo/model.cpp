#include "qubo/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qubo {

std::uint64_t assignment_code(const Assignment& x) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) code |= std::uint64_t{1} << i;
    }
    return code;
}

QuboModel::QuboModel(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("QuboModel: negative dimension");
    linear_.assign(static_cast<std::size_t>(n), 0.0);
    quad_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
}

void QuboModel::check_index(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("QuboModel: variable index out of range");
}

void QuboModel::check_pair(int i, int j) const {
    check_index(i);
    check_index(j);
    if (i == j) throw std::invalid_argument("QuboModel: quadratic term requires two distinct variables");
}

double QuboModel::linear(int i) const {
    check_index(i);
    return linear_[static_cast<std::size_t>(i)];
}

void QuboModel::set_linear(int i, double coefficient) {
    check_index(i);
    linear_[static_cast<std::size_t>(i)] = coefficient;
}

void QuboModel::add_linear(int i, double coefficient) {
    check_index(i);
    linear_[static_cast<std::size_t>(i)] += coefficient;
}

double QuboModel::quadratic(int i, int j) const {
    check_pair(i, j);
    return quad_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
}

void QuboModel::set_quadratic(int i, int j, double coefficient) {
    check_pair(i, j);
    quad_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)] = coefficient;
    quad_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)] = coefficient;
}

void QuboModel::add_quadratic(int i, int j, double coefficient) {
    check_pair(i, j);
    set_quadratic(i, j, quadratic(i, j) + coefficient);
}

std::vector<std::tuple<int, int, double>> QuboModel::quadratic_terms() const {
    std::vector<std::tuple<int, int, double>> terms;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            const double c = quad_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
            if (c != 0.0) terms.emplace_back(i, j, c);
        }
    }
    return terms;
}

std::span<const double> QuboModel::row(int i) const {
    check_index(i);
    return {quad_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
}

double QuboModel::evaluate(const Assignment& x) const {
    if (static_cast<int>(x.size()) != n_) {
        throw std::invalid_argument("QuboModel::evaluate: assignment length does not match model dimension");
    }
    double value = 0.0;
    for (int i = 0; i < n_; ++i) {
        if (!x[static_cast<std::size_t>(i)]) continue;
        value += linear_[static_cast<std::size_t>(i)];
        const double* r = quad_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
        for (int j = i + 1; j < n_; ++j) {
            if (x[static_cast<std::size_t>(j)]) value += r[j];
        }
    }
    return value;
}

double QuboModel::flip_delta(const Assignment& x, int i) const {
    if (static_cast<int>(x.size()) != n_) {
        throw std::invalid_argument("QuboModel::flip_delta: assignment length does not match model dimension");
    }
    check_index(i);
    double neighborhood = linear_[static_cast<std::size_t>(i)];
    const double* r = quad_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
    for (int j = 0; j < n_; ++j) {
        if (x[static_cast<std::size_t>(j)]) neighborhood += r[j];
    }
    return x[static_cast<std::size_t>(i)] ? -neighborhood : neighborhood;
}

void QuboModel::validate() const {
    for (double c : linear_) {
        if (!std::isfinite(c)) throw std::invalid_argument("QuboModel: non-finite linear coefficient");
    }
    for (double c : quad_) {
        if (!std::isfinite(c)) throw std::invalid_argument("QuboModel: non-finite quadratic coefficient");
    }
}

double IsingModel::energy(const std::vector<int>& spins) const {
    if (static_cast<int>(spins.size()) != n) {
        throw std::invalid_argument("IsingModel::energy: spin vector length does not match dimension");
    }
    double value = offset;
    for (int i = 0; i < n; ++i) {
        value += field[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) {
            value += coupling_at(i, j) * spins[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(j)];
        }
    }
    return value;
}

IsingModel to_ising(const QuboModel& model) {
    model.validate();
    const int n = model.size();
    IsingModel ising;
    ising.n = n;
    ising.field.assign(static_cast<std::size_t>(n), 0.0);
    ising.coupling.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    ising.offset = 0.0;
    for (int i = 0; i < n; ++i) {
        ising.field[static_cast<std::size_t>(i)] = model.linear(i) / 2.0;
        ising.offset += model.linear(i) / 2.0;
    }
    for (const auto& [i, j, b] : model.quadratic_terms()) {
        const double quarter = b / 4.0;
        ising.coupling[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = quarter;
        ising.coupling[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = quarter;
        ising.field[static_cast<std::size_t>(i)] += quarter;
        ising.field[static_cast<std::size_t>(j)] += quarter;
        ising.offset += quarter;
    }
    return ising;
}

SubQubo fix_variables(const QuboModel& model, const std::unordered_map<int, std::uint8_t>& fixed) {
    const int n = model.size();
    for (const auto& [i, v] : fixed) {
        if (i < 0 || i >= n) throw std::out_of_range("fix_variables: fixed index out of range");
        if (v != 0 && v != 1) throw std::invalid_argument("fix_variables: fixed value must be 0 or 1");
    }

    SubQubo sub;
    std::vector<int> position(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (!fixed.contains(i)) {
            position[static_cast<std::size_t>(i)] = static_cast<int>(sub.free.size());
            sub.free.push_back(i);
        }
    }
    sub.model = QuboModel(static_cast<int>(sub.free.size()));

    // c_i = a_i + sum over clamped j of b_ij * x_j
    for (std::size_t s = 0; s < sub.free.size(); ++s) {
        const int i = sub.free[s];
        double c = model.linear(i);
        for (const auto& [j, v] : fixed) {
            if (v) c += model.quadratic(i, j);
        }
        sub.model.set_linear(static_cast<int>(s), c);
    }
    for (const auto& [i, j, b] : model.quadratic_terms()) {
        const int pi = position[static_cast<std::size_t>(i)];
        const int pj = position[static_cast<std::size_t>(j)];
        if (pi >= 0 && pj >= 0) sub.model.set_quadratic(pi, pj, b);
    }

    // Constant contributed entirely by the clamped block.
    double constant = 0.0;
    for (const auto& [i, v] : fixed) {
        if (v) constant += model.linear(i);
    }
    for (const auto& [i, j, b] : model.quadratic_terms()) {
        const auto it_i = fixed.find(i);
        const auto it_j = fixed.find(j);
        if (it_i != fixed.end() && it_j != fixed.end() && it_i->second && it_j->second) {
            constant += b;
        }
    }
    sub.constant = constant;
    return sub;
}

void merge_assignment(Assignment& x, const std::vector<int>& free, const Assignment& y) {
    if (free.size() != y.size()) throw std::invalid_argument("merge_assignment: size mismatch");
    for (std::size_t s = 0; s < free.size(); ++s) {
        x[static_cast<std::size_t>(free[s])] = y[s];
    }
}

QuboModel read_qubo(std::istream& in) {
    std::string line;
    int lineno = 0;
    QuboModel model;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "n") {
            int n = -1;
            if (!(ls >> n) || n < 0) throw std::runtime_error("qubo file line " + std::to_string(lineno) + ": bad dimension");
            model = QuboModel(n);
            have_header = true;
        } else if (tag == "lin") {
            if (!have_header) throw std::runtime_error("qubo file: 'lin' before 'n' header");
            int i;
            double c;
            if (!(ls >> i >> c)) throw std::runtime_error("qubo file line " + std::to_string(lineno) + ": bad linear term");
            model.set_linear(i, c);
        } else if (tag == "quad") {
            if (!have_header) throw std::runtime_error("qubo file: 'quad' before 'n' header");
            int i, j;
            double c;
            if (!(ls >> i >> j >> c)) throw std::runtime_error("qubo file line " + std::to_string(lineno) + ": bad quadratic term");
            model.set_quadratic(i, j, c);
        } else {
            throw std::runtime_error("qubo file line " + std::to_string(lineno) + ": unknown tag '" + tag + "'");
        }
    }
    if (!have_header) throw std::runtime_error("qubo file: missing 'n' header");
    model.validate();
    return model;
}

QuboModel read_qubo_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open qubo file: " + path);
    return read_qubo(in);
}

void write_qubo(std::ostream& out, const QuboModel& model) {
    out.precision(17);
    out << "n " << model.size() << "\n";
    for (int i = 0; i < model.size(); ++i) {
        if (model.linear(i) != 0.0) out << "lin " << i << " " << model.linear(i) << "\n";
    }
    for (const auto& [i, j, c] : model.quadratic_terms()) {
        out << "quad " << i << " " << j << " " << c << "\n";
    }
}

void write_qubo_file(const std::string& path, const QuboModel& model) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open qubo file for writing: " + path);
    write_qubo(out, model);
}

}  // namespace qubo

#include "qsim/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace qsim::ref {

void apply_dense(std::vector<cd>& amplitudes, std::span<const cd> matrix, std::span<const int> qubits) {
    const int k = static_cast<int>(qubits.size());
    const std::size_t block = std::size_t{1} << k;
    if (matrix.size() != block * block) {
        throw std::invalid_argument("apply_dense: matrix size does not match qubit count");
    }

    std::vector<std::size_t> masks(qubits.size());
    for (std::size_t q = 0; q < qubits.size(); ++q) {
        masks[q] = std::size_t{1} << qubits[q];
    }
    std::size_t all_mask = 0;
    for (std::size_t m : masks) {
        if (all_mask & m) throw std::invalid_argument("apply_dense: duplicate qubit");
        all_mask |= m;
    }

    std::vector<cd> gathered(block);
    std::vector<cd> transformed(block);

    for (std::size_t base = 0; base < amplitudes.size(); ++base) {
        if (base & all_mask) continue;  // visit each block at its all-zero representative

        for (std::size_t sub = 0; sub < block; ++sub) {
            std::size_t idx = base;
            for (int q = 0; q < k; ++q) {
                if (sub & (std::size_t{1} << q)) idx |= masks[static_cast<std::size_t>(q)];
            }
            gathered[sub] = amplitudes[idx];
        }
        for (std::size_t r = 0; r < block; ++r) {
            cd acc(0.0, 0.0);
            for (std::size_t c = 0; c < block; ++c) {
                acc += matrix[r * block + c] * gathered[c];
            }
            transformed[r] = acc;
        }
        for (std::size_t sub = 0; sub < block; ++sub) {
            std::size_t idx = base;
            for (int q = 0; q < k; ++q) {
                if (sub & (std::size_t{1} << q)) idx |= masks[static_cast<std::size_t>(q)];
            }
            amplitudes[idx] = transformed[sub];
        }
    }
}

std::vector<cd> xx_matrix(double theta) {
    const cd c(std::cos(theta / 2.0), 0.0);
    const cd ms(0.0, -std::sin(theta / 2.0));
    const cd z(0.0, 0.0);
    // Basis order |b a>: 00, 01, 10, 11 with qubit_a the low bit.
    return {
        c, z, z, ms,
        z, c, ms, z,
        z, ms, c, z,
        ms, z, z, c,
    };
}

std::vector<cd> zz_matrix(double theta) {
    const cd p(std::cos(theta / 2.0), -std::sin(theta / 2.0));  // equal bits
    const cd q = std::conj(p);                                  // differing bits
    const cd z(0.0, 0.0);
    return {
        p, z, z, z,
        z, q, z, z,
        z, z, q, z,
        z, z, z, p,
    };
}

std::vector<cd> controlled_matrix(const Mat2& u, int num_controls) {
    if (num_controls < 0) throw std::invalid_argument("controlled_matrix: negative control count");
    const std::size_t block = std::size_t{1} << (num_controls + 1);
    std::vector<cd> m(block * block, cd(0.0, 0.0));
    // Matrix space: bits 0..k-1 are the controls, bit k is the target.
    const std::size_t cmask = (std::size_t{1} << num_controls) - 1;
    const std::size_t tmask = std::size_t{1} << num_controls;
    for (std::size_t col = 0; col < block; ++col) {
        if ((col & cmask) == cmask) {
            const std::size_t t = (col & tmask) ? 1 : 0;
            const std::size_t base = col & ~tmask;
            m[(base)*block + col] = u[0][t];
            m[(base | tmask) * block + col] = u[1][t];
        } else {
            m[col * block + col] = cd(1.0, 0.0);
        }
    }
    return m;
}

void apply_multi_controlled(std::vector<cd>& amplitudes, const Mat2& u, std::span<const int> controls,
                            int target) {
    std::vector<int> qubits(controls.begin(), controls.end());
    qubits.push_back(target);
    const auto matrix = controlled_matrix(u, static_cast<int>(controls.size()));
    apply_dense(amplitudes, matrix, qubits);
}

}  // namespace qsim::ref

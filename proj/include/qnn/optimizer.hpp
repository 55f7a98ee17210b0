#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace qnn {

/// Adam with bias correction. Deterministic: state depends only on the
/// gradient sequence.
class AdamOptimizer {
public:
    AdamOptimizer(std::size_t size, double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8)
        : beta1_(beta1), beta2_(beta2), epsilon_(epsilon), m_(size, 0.0), v_(size, 0.0) {}

    void step(std::vector<double>& params, const std::vector<double>& grad, double learning_rate) {
        ++t_;
        const double correction1 = 1.0 - std::pow(beta1_, t_);
        const double correction2 = 1.0 - std::pow(beta2_, t_);
        for (std::size_t i = 0; i < params.size(); ++i) {
            m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
            v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
            const double mhat = m_[i] / correction1;
            const double vhat = v_[i] / correction2;
            params[i] -= learning_rate * mhat / (std::sqrt(vhat) + epsilon_);
        }
    }

private:
    double beta1_, beta2_, epsilon_;
    int t_ = 0;
    std::vector<double> m_, v_;
};

}  // namespace qnn

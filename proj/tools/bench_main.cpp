// Kernel benchmark: dense serial reference vs the bitmask statevector
// kernels, single-threaded and with the full OpenMP team, plus the batched
// parameter-shift gradient. Build and run:
//
//   ./qmlab-bench [qubits] [repeats]

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "qimage/frqi.hpp"
#include "qnn/train.hpp"
#include "qsim/reference.hpp"
#include "qsim/state.hpp"
#include "util/rng.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

qsim::StateVector random_state(util::Rng& rng, int qubits) {
    std::vector<qsim::cd> amps(std::size_t{1} << qubits);
    double total = 0.0;
    for (auto& a : amps) {
        a = qsim::cd(rng.normal(), rng.normal());
        total += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(total);
    for (auto& a : amps) a *= scale;
    return qsim::StateVector::from_amplitudes(qubits, std::move(amps));
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

struct GateTimings {
    double reference_ms = 0.0;
    double kernel_1t_ms = 0.0;
    double kernel_nt_ms = 0.0;
};

template <typename RefFn, typename KernelFn>
GateTimings time_gate(util::Rng& rng, int qubits, int repeats, RefFn&& reference, KernelFn&& kernel) {
    GateTimings t;
    const int threads = max_threads();

    qsim::StateVector state = random_state(rng, qubits);
    std::vector<qsim::cd> amps(state.amplitudes().begin(), state.amplitudes().end());

    auto start = clock_type::now();
    for (int r = 0; r < repeats; ++r) reference(amps);
    t.reference_ms = ms_since(start) / repeats;

    set_threads(1);
    start = clock_type::now();
    for (int r = 0; r < repeats; ++r) kernel(state);
    t.kernel_1t_ms = ms_since(start) / repeats;

    set_threads(threads);
    start = clock_type::now();
    for (int r = 0; r < repeats; ++r) kernel(state);
    t.kernel_nt_ms = ms_since(start) / repeats;
    return t;
}

void print_row(const char* name, const GateTimings& t) {
    std::printf("%-10s %12.3f %12.3f %12.3f %9.1fx %9.1fx\n", name, t.reference_ms, t.kernel_1t_ms,
                t.kernel_nt_ms, t.reference_ms / t.kernel_1t_ms, t.kernel_1t_ms / t.kernel_nt_ms);
}

}  // namespace

int main(int argc, char** argv) {
    const int qubits = argc > 1 ? std::atoi(argv[1]) : 20;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 10;
    util::Rng rng(7);

    std::printf("statevector gate kernels: %d qubits (%zu amplitudes), %d repeats, %d threads\n", qubits,
                std::size_t{1} << qubits, repeats, max_threads());
    std::printf("%-10s %12s %12s %12s %9s %9s\n", "gate", "ref ms", "kernel 1t", "kernel nt", "vs ref",
                "scaling");

    const int a = 1, b = qubits - 2;
    print_row("H", time_gate(
                       rng, qubits, repeats,
                       [&](std::vector<qsim::cd>& amps) {
                           const double inv = 0.7071067811865476;
                           const std::vector<qsim::cd> h{inv, inv, inv, -inv};
                           const int q[1] = {a};
                           qsim::ref::apply_dense(amps, h, q);
                       },
                       [&](qsim::StateVector& s) { s.apply_h(a); }));
    print_row("RY", time_gate(
                        rng, qubits, repeats,
                        [&](std::vector<qsim::cd>& amps) {
                            const auto m = qsim::ry_matrix(0.7);
                            const std::vector<qsim::cd> u{m[0][0], m[0][1], m[1][0], m[1][1]};
                            const int q[1] = {b};
                            qsim::ref::apply_dense(amps, u, q);
                        },
                        [&](qsim::StateVector& s) { s.apply_ry(0.7, b); }));
    print_row("CX", time_gate(
                        rng, qubits, repeats,
                        [&](std::vector<qsim::cd>& amps) {
                            qsim::ref::apply_multi_controlled(amps, qsim::x_matrix(), std::vector<int>{a}, b);
                        },
                        [&](qsim::StateVector& s) { s.apply_cx(a, b); }));
    print_row("XX", time_gate(
                        rng, qubits, repeats,
                        [&](std::vector<qsim::cd>& amps) {
                            const int q[2] = {a, b};
                            qsim::ref::apply_dense(amps, qsim::ref::xx_matrix(0.7), q);
                        },
                        [&](qsim::StateVector& s) { s.apply_xx(0.7, a, b); }));
    print_row("ZZ", time_gate(
                        rng, qubits, repeats,
                        [&](std::vector<qsim::cd>& amps) {
                            const int q[2] = {a, b};
                            qsim::ref::apply_dense(amps, qsim::ref::zz_matrix(0.7), q);
                        },
                        [&](qsim::StateVector& s) { s.apply_zz(0.7, a, b); }));

    // Batched parameter-shift gradient: dominated by many small statevector
    // evolutions, parallelized across samples.
    std::printf("\nbatched gradient (compressed 8x8, 16 layers, batch 64)\n");
    std::vector<qimage::BinaryImage> images;
    std::vector<int> labels;
    for (int i = 0; i < 64; ++i) {
        qimage::BinaryImage img;
        img.side = 8;
        img.bits.resize(64);
        for (auto& bit : img.bits) bit = rng.bernoulli(0.5) ? 1 : 0;
        images.push_back(img);
        labels.push_back(i % 2 == 0 ? 1 : -1);
    }
    const auto data = qnn::encode_dataset(images, labels, true);
    qnn::QnnConfig config{8, true, 16, qnn::Arch::CRADL, qnn::Loss::Hinge, 5};
    const auto params = qnn::init_params(config);
    std::vector<std::size_t> batch(data.size());
    for (std::size_t i = 0; i < batch.size(); ++i) batch[i] = i;

    set_threads(1);
    auto start = clock_type::now();
    const auto g1 = qnn::gradient(config, params, data, batch);
    const double grad_1t = ms_since(start);

    set_threads(max_threads());
    start = clock_type::now();
    const auto gn = qnn::gradient(config, params, data, batch);
    const double grad_nt = ms_since(start);

    double worst = 0.0;
    for (std::size_t p = 0; p < g1.angles.size(); ++p) {
        worst = std::max(worst, std::abs(g1.angles[p] - gn.angles[p]));
    }
    std::printf("%-10s %12.1f ms\n", "1 thread", grad_1t);
    std::printf("%-10s %12.1f ms  (%.1fx, max deviation %.2e)\n", "n threads", grad_nt, grad_1t / grad_nt,
                worst);
    return 0;
}

#include <benchmark/benchmark.h>

#include <random>

#include "omorse/error.hpp"
#include "omorse/nbc.hpp"
#include "omorse/salvetti.hpp"
#include "omorse/zonotope.hpp"

using namespace omorse;

namespace {

Arrangement sample(std::size_t n, std::size_t d) {
    std::mt19937_64 rng(n * 31 + d);
    return random_arrangement(n, d, 4, rng);
}

// First random instance on which eta runs to completion, so the timing
// isn't dominated by an early theorem violation.
struct EtaInput {
    Arrangement a;
    SignVector base;
    std::vector<int> order;
};

EtaInput eta_input(std::size_t n, std::size_t d) {
    std::mt19937_64 rng(n * 131 + d);
    for (;;) {
        EtaInput in{random_arrangement(n, d, 4, rng), {}, {}};
        auto m = enumerate_covectors(in.a);
        in.base = m.topes()[rng() % m.topes().size()];
        in.order = generate_cut_ordering(m, in.base);
        try {
            eta(in.a, in.base, in.order);
            return in;
        } catch (const TheoremViolation&) {
        }
    }
}

}  // namespace

static void BM_Covectors(benchmark::State& st) {
    Arrangement a = sample(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_covectors(a));
}
BENCHMARK(BM_Covectors)->Args({4, 2})->Args({6, 3})->Args({8, 3})->Args({7, 4})->Unit(benchmark::kMillisecond);

static void BM_Salvetti(benchmark::State& st) {
    auto m = enumerate_covectors(sample(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1))));
    for (auto _ : st) benchmark::DoNotOptimize(build_salvetti(m));
}
BENCHMARK(BM_Salvetti)->Args({4, 2})->Args({5, 3})->Args({6, 3})->Unit(benchmark::kMillisecond);

static void BM_Eta(benchmark::State& st) {
    EtaInput in = eta_input(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(eta(in.a, in.base, in.order));
}
BENCHMARK(BM_Eta)->Args({4, 2})->Args({5, 3})->Args({6, 3})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

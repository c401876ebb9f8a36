#include <benchmark/benchmark.h>

#include <random>

#include "echinf/ech_model.hpp"
#include "echinf/homology.hpp"
#include "echinf/o_complex.hpp"
#include "echinf/snf.hpp"

using namespace echinf;

namespace {

IntMatrix random_matrix(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-3, 3), zero(0, 2);
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = zero(rng) == 0 ? entry(rng) : 0;
    return m;
}

HFData stress()
{
    HFData hf;
    hf.names = {"a", "b", "c", "d", "e", "f", "h"};
    hf.gradings = {3, 2, 0, 1, 0, 1, -3};
    hf.differential = {{0, 1, 0, 3}, {2, 3, 1, 1}, {6, 4, 2, 1}};
    return hf;
}

void BM_SmithNormalForm(benchmark::State& state)
{
    IntMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_OWindowLimit(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(limit_homology(state.range(0)));
}
BENCHMARK(BM_OWindowLimit)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_HandleReduction(benchmark::State& state)
{
    int g = static_cast<int>(state.range(0));
    std::int64_t L = 3 * g + 1;
    GradedComplex w = handle_complex(g, L);
    for (auto _ : state)
        benchmark::DoNotOptimize(reduce(w, handle_matching(w)));
    state.counters["cells"] = static_cast<double>(w.size());
}
BENCHMARK(BM_HandleReduction)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_BuildEch(benchmark::State& state)
{
    HFData hf = stress();
    EchParams p;
    p.g = static_cast<int>(state.range(0));
    p.L = 3 * p.g + 1;
    std::size_t cells = 0;
    for (auto _ : state) {
        GradedComplex e = build_ech(hf, p);
        cells = e.size();
        benchmark::DoNotOptimize(e);
    }
    state.counters["cells"] = static_cast<double>(cells);
}
BENCHMARK(BM_BuildEch)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_EchHomology(benchmark::State& state)
{
    HFData hf = stress();
    EchParams p;
    p.g = static_cast<int>(state.range(0));
    p.L = 3 * p.g + 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(ech_flavor_homology(hf, Flavor::infinity, p, Coefficients::integers()));
}
BENCHMARK(BM_EchHomology)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <string>

#include "tsfloquet/floquet.hpp"

using namespace tsfloquet;

namespace {

constexpr double kPi = 3.14159265358979323846;

SystemSpec continuous_example() {
    return make_system(TimeScale::validate({0, kPi, {Interval{0, kPi}}}), parse_expression("sin(2*t)/2"),
                       parse_expression("1/4"));
}

SystemSpec mathieu() {
    return make_system(TimeScale::validate({0, kPi, {Interval{0, kPi}}}), parse_expression("0"),
                       parse_expression("3.814 - 3*cos(2*t)"));
}

SystemSpec discrete(std::size_t k) {
    PeriodicTimeScale pts{0, static_cast<double>(k), {}};
    for (std::size_t i = 0; i <= k; ++i) pts.segments.push_back(Point{static_cast<double>(i)});
    return make_system(TimeScale::validate(pts), parse_expression("0.1*sin(t)"), parse_expression("1 + 0.5*cos(t)"));
}

SystemSpec hybrid() {
    return make_system(TimeScale::validate({0, 3, {Interval{0, 1}, Point{2}, Point{3}}}), parse_expression("0.1"),
                       parse_expression("2 + cos(t)"));
}

void BM_SeriesContinuous(benchmark::State& state) {
    const SystemSpec spec = continuous_example();
    const PhaseTable table = solve_phi(spec);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(a_partial(spec, table, n));
}
BENCHMARK(BM_SeriesContinuous)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

void BM_SeriesMathieu(benchmark::State& state) {
    const SystemSpec spec = mathieu();
    const PhaseTable table = solve_phi(spec);
    for (auto _ : state) benchmark::DoNotOptimize(a_partial(spec, table, 3));
}
BENCHMARK(BM_SeriesMathieu)->Unit(benchmark::kMillisecond);

void BM_DiscreteRecursion(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const SystemSpec spec = discrete(k);
    const PhaseTable table = solve_phi(spec);
    for (auto _ : state) benchmark::DoNotOptimize(a_terms(spec, table, k));
}
BENCHMARK(BM_DiscreteRecursion)->DenseRange(2, 12, 2);

void BM_DiscreteEnumeration(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const SystemSpec spec = discrete(k);
    const PhaseTable table = solve_phi(spec);
    for (auto _ : state) {
        for (std::size_t n = 0; n <= k; ++n) benchmark::DoNotOptimize(a_term_by_enumeration(spec, table, n));
    }
}
BENCHMARK(BM_DiscreteEnumeration)->DenseRange(2, 12, 2);

void BM_Bounds(benchmark::State& state) {
    const SystemSpec spec = hybrid();
    const PhaseTable table = solve_phi(spec);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_bounds(spec, table));
}
BENCHMARK(BM_Bounds)->Unit(benchmark::kMillisecond);

void BM_Monodromy(benchmark::State& state) {
    const SystemSpec spec = mathieu();
    for (auto _ : state) benchmark::DoNotOptimize(monodromy(spec));
}
BENCHMARK(BM_Monodromy)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
    const SystemSpec spec = hybrid();
    for (auto _ : state) benchmark::DoNotOptimize(analyze(spec));
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

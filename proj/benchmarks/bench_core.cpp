#include <benchmark/benchmark.h>

#include "dendrite/julia.hpp"
#include "dendrite/shadowing.hpp"

namespace {

using namespace dendrite;

const DendriteSpace& periodic_space() {
    static const DendriteSpace space = make_space(parse_literal("[10*]"));
    return space;
}

const DendriteSpace& pd_space() {
    static const DendriteSpace space =
        make_space(SymSeq::from_generator(period_doubling_generator()), 49200);
    return space;
}

void BM_agreement_depth_periodic(benchmark::State& state) {
    const auto& space = periodic_space();
    const SymSeq x = parse_literal("1101[011]");
    const SymSeq y = parse_literal("1101[010]");
    for (auto _ : state) {
        benchmark::DoNotOptimize(agreement_depth(x, y, space.tau, state.range(0)));
    }
}
BENCHMARK(BM_agreement_depth_periodic)->Arg(32)->Arg(256);

void BM_simeq_star_free(benchmark::State& state) {
    const auto& space = pd_space();
    const auto n = state.range(0);
    const FiniteWord x = space.tau.truncated(n);
    FiniteWord y = x;
    y[static_cast<std::size_t>(n / 2)] =
        y[static_cast<std::size_t>(n / 2)] == Symbol::One ? Symbol::Zero : Symbol::One;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simeq(x, y, space.tau));
    }
}
BENCHMARK(BM_simeq_star_free)->Arg(256)->Arg(4096);

void BM_validate_orbit(benchmark::State& state) {
    const auto& space = periodic_space();
    const DeltaScale delta = delta_for_epsilon(space, EpsilonScale::from_exponent(4));
    const auto orbit = random_pseudo_orbit(space, delta, state.range(0), 7, 0.4);
    std::vector<SymSeq> points;
    for (std::int64_t i = 1; i <= orbit.size(); ++i) points.push_back(orbit.point(i));
    for (auto _ : state) {
        benchmark::DoNotOptimize(validate(points, delta, space.tau));
    }
}
BENCHMARK(BM_validate_orbit)->Arg(50)->Arg(200);

void BM_build_ledger(benchmark::State& state) {
    const auto& space = periodic_space();
    const EpsilonScale eps = EpsilonScale::from_exponent(4);
    const DeltaScale delta = delta_for_epsilon(space, eps);
    const auto orbit = random_pseudo_orbit(space, delta, state.range(0), 11, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_ledger(orbit, eps));
    }
}
BENCHMARK(BM_build_ledger)->Arg(50)->Arg(200);

void BM_period_doubling_read(benchmark::State& state) {
    const SymSeq pd = SymSeq::from_generator(period_doubling_generator());
    for (auto _ : state) {
        benchmark::DoNotOptimize(pd.truncated(state.range(0)));
    }
}
BENCHMARK(BM_period_doubling_read)->Arg(1024)->Arg(16384);

void BM_render_julia(benchmark::State& state) {
    ImageSpec spec;
    spec.width = state.range(0);
    spec.height = state.range(0);
    spec.max_iter = 64;
    const ComplexParam c{{0.0, 1.0}, 1e-9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(render(c, spec));
    }
}
BENCHMARK(BM_render_julia)->Arg(128);

}  // namespace

BENCHMARK_MAIN();

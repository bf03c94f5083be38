#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "fieldline/bound.hpp"
#include "fieldline/conditional_table.hpp"
#include "fieldline/entropy.hpp"
#include "fieldline/field.hpp"
#include "fieldline/geometry.hpp"
#include "fieldline/polygon.hpp"
#include "fieldline/rng.hpp"
#include "fieldline/sampler.hpp"

namespace fl = fieldline;

namespace {

void bm_lattice_approx(benchmark::State& state) {
    const fl::linear_map map(fl::slope::rational(1, 3), 0.25);
    for (auto _ : state) {
        auto sites = fl::lattice_approx(map, 0, state.range(0));
        benchmark::DoNotOptimize(sites.sites.data());
    }
}
BENCHMARK(bm_lattice_approx)->Arg(1024)->Arg(16384);

void bm_contour_approx(benchmark::State& state) {
    const fl::linear_map map(fl::slope::irrational(0.4142135623730951), 0.1);
    for (auto _ : state) {
        auto sites = fl::contour_approx(map, 0, state.range(0));
        benchmark::DoNotOptimize(sites.sites.data());
    }
}
BENCHMARK(bm_contour_approx)->Arg(1024)->Arg(16384);

void bm_gibbs_sweep(benchmark::State& state) {
    const auto side = state.range(0);
    fl::sampler_config cfg;
    cfg.burn_in_sweeps = 0;
    fl::gibbs_sampler chain(fl::ising_model{0.3}, fl::region{0, 0, side, side}, cfg, 7);
    for (auto _ : state) {
        chain.sweep();
        benchmark::DoNotOptimize(chain.spin(0, 0));
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(bm_gibbs_sweep)->Arg(32)->Arg(64);

void bm_pattern_harvest(benchmark::State& state) {
    const fl::iid_model model{fl::alphabet::binary(), {0.5, 0.5}};
    const fl::region window{0, 0, 48, 48};
    fl::rng_stream rng(1, 0);
    const fl::configuration snap = fl::sample_iid(model, window, rng);
    const std::vector<fl::site> past{{-1, 0}, {-2, 0}, {-3, 0}, {-4, 0}, {-1, -1}, {-2, -1}};
    for (auto _ : state) {
        fl::conditional_table table(2);
        for (std::int64_t y = 8; y < 40; ++y)
            for (std::int64_t x = 8; x < 40; ++x)
                table.add(fl::pattern_key(snap, {x, y}, past, 2), snap.at(x, y));
        benchmark::DoNotOptimize(table.total());
    }
}
BENCHMARK(bm_pattern_harvest);

void bm_cond_entropy(benchmark::State& state) {
    fl::conditional_table table(2);
    fl::rng_stream rng(3, 1);
    for (int i = 0; i < 1 << 16; ++i)
        table.add(static_cast<std::uint64_t>(rng.next_double() * 4096), rng.next_double() < 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(table.cond_entropy(0.5));
}
BENCHMARK(bm_cond_entropy);

void bm_bound_functional(benchmark::State& state) {
    const fl::polygon shape = fl::make_regular_polygon(static_cast<int>(state.range(0)), 1.0);
    const auto cost = [](const fl::direction& d) { return 1.0 + 0.5 * d.lambda * d.lambda; };
    for (auto _ : state) benchmark::DoNotOptimize(fl::bound_functional(shape, cost));
}
BENCHMARK(bm_bound_functional)->Arg(8)->Arg(64);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}

#include <benchmark/benchmark.h>

#include <cmath>

#include "gmt/components.hpp"
#include "gmt/gallery.hpp"
#include "gmt/measure.hpp"
#include "gmt/planar.hpp"
#include "gmt/whitney.hpp"

using namespace gmt;

namespace {

CellSet left_half(const Domain& d) {
    const Grid& g = d.omega.grid();
    CellSet e(g);
    for (Index i = 0; i < g.size(); ++i) e.set(i, d.omega.test(i) && g.center(i)[0] < 0);
    return e;
}

void BM_Perimeter(benchmark::State& state) {
    const Domain d = make_domain({DomainKind::Comb, int(state.range(0)), {}, 0});
    for (auto _ : state) benchmark::DoNotOptimize(perimeter(d.omega));
    state.SetItemsProcessed(state.iterations() * d.omega.size());
}
BENCHMARK(BM_Perimeter)->DenseRange(8, 10);

void BM_Whitney(benchmark::State& state) {
    const Domain d = make_domain({DomainKind::Disk, int(state.range(0)), {}, 0});
    for (auto _ : state) benchmark::DoNotOptimize(whitney_decompose(d.omega).cubes.size());
}
BENCHMARK(BM_Whitney)->DenseRange(7, 9)->Unit(benchmark::kMillisecond);

void BM_PartitionOfUnity(benchmark::State& state) {
    const Domain d = make_domain({DomainKind::Square, int(state.range(0)), {}, 0});
    const WhitneyDecomposition w = whitney_decompose(d.omega);
    for (auto _ : state) benchmark::DoNotOptimize(partition_of_unity(w).gradient_bound_constant);
}
BENCHMARK(BM_PartitionOfUnity)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);

void BM_Jordan(benchmark::State& state) {
    const Domain d = make_domain({DomainKind::Comb, int(state.range(0)), {}, 0});
    for (auto _ : state) benchmark::DoNotOptimize(jordan_decompose(d.omega).cycles.size());
}
BENCHMARK(BM_Jordan)->DenseRange(8, 10)->Unit(benchmark::kMillisecond);

void BM_CombExtension(benchmark::State& state) {
    const Domain d = make_domain({DomainKind::Comb, int(state.range(0)), {}, 0});
    const CellSet e = left_half(d);
    const ComponentLabeling lab = complement_components(d.omega);
    const CellSet base = filled_baseline(e, d.omega, lab);
    for (auto _ : state) benchmark::DoNotOptimize(strong_perimeter_extend_set(e, d.omega, base).constant);
}
BENCHMARK(BM_CombExtension)->DenseRange(8, 10)->Unit(benchmark::kMillisecond);

void BM_ClassifyDensity(benchmark::State& state) {
    const int level = int(state.range(0));
    const Domain d = make_domain({DomainKind::SlitDisk, level, {}, 0});
    const double h = std::ldexp(1.0, -level);
    for (auto _ : state) benchmark::DoNotOptimize(classify_density(d.omega, {8 * h, 16 * h, 32 * h}).fraction);
}
BENCHMARK(BM_ClassifyDensity)->DenseRange(7, 9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "rastershape/rastershape.hpp"

using namespace rastershape;

namespace {

// 460 records of the given length, the size of the reference dataset.
DescriptorDatabase random_db(std::size_t length) {
    const RasterSpec spec{RasterKind::circular, 8, 24};
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    DescriptorDatabase db(spec, Variant::circ_radial);
    for (int i = 0; i < 460; ++i) {
        std::vector<double> v(length);
        for (auto& x : v) x = u(rng);
        db.add({"r" + std::to_string(i), "c" + std::to_string(i % 23), {Variant::circ_radial, spec, v}});
    }
    return db;
}

void BM_Query(benchmark::State& state) {
    const auto db = random_db(static_cast<std::size_t>(state.range(0)));
    const auto& probe = db.records().front();
    for (auto _ : state) benchmark::DoNotOptimize(query(db, probe.vector, 3, probe.id));
}
BENCHMARK(BM_Query)->Arg(4)->Arg(24)->Arg(480);

void BM_RetrievalEfficiency(benchmark::State& state) {
    const auto db = random_db(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(retrieval_efficiency(db, db.records()));
}
BENCHMARK(BM_RetrievalEfficiency)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

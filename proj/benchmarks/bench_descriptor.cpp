#include <benchmark/benchmark.h>

#include "rastershape/rastershape.hpp"

using namespace rastershape;

namespace {

const BinaryShape& shape() {
    static const auto s = synthetic::corpus({.categories = 1, .per_category = 1}).front();
    return s;
}

// Args: variant index, separation, samples per cycle.
void BM_Extract(benchmark::State& state) {
    const auto variant = static_cast<Variant>(state.range(0));
    const auto spec = spec_for(variant, static_cast<int>(state.range(1)), static_cast<int>(state.range(2)));
    const auto geometry = measure(shape());
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract(shape(), geometry, spec, variant));
    }
    state.SetLabel(std::string(to_string(variant)));
}
BENCHMARK(BM_Extract)->ArgsProduct({{0, 1, 2, 3}, {8, 32}, {4, 24}});

void BM_Measure(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(measure(shape()));
}
BENCHMARK(BM_Measure);

void BM_DecodePgm(benchmark::State& state) {
    const auto bytes = encode_pgm(shape());
    for (auto _ : state) benchmark::DoNotOptimize(decode_netpbm(bytes, {}));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_DecodePgm);

}  // namespace

BENCHMARK_MAIN();

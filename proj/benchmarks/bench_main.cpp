#include <benchmark/benchmark.h>

#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "vgp/backtest.hpp"
#include "vgp/engine.hpp"
#include "vgp/indicators.hpp"
#include "vgp/market_data.hpp"
#include "vgp/tree.hpp"

namespace {

using namespace vgp;

std::vector<Candle> walk(std::size_t n) {
    using namespace std::chrono;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> step(0.0, 0.02);
    std::vector<Candle> out;
    double prev = 100.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double close = prev * std::exp(step(rng));
        Candle c;
        c.date = year_month_day{sys_days{year{2000} / January / 1} + days{static_cast<int>(t)}};
        c.open = prev;
        c.close = close;
        c.high = std::max(prev, close) + 0.5;
        c.low = std::min(prev, close) - 0.5;
        c.volume = 1000.0;
        out.push_back(c);
        prev = close;
    }
    return out;
}

const FeatureTable& table() {
    static const FeatureTable t = enrich(walk(2000));
    return t;
}

void BM_Ema(benchmark::State& state) {
    const auto candles = walk(static_cast<std::size_t>(state.range(0)));
    std::vector<double> close;
    for (const auto& c : candles) close.push_back(c.close);
    for (auto _ : state) benchmark::DoNotOptimize(indicators::ema(close, 200));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ema)->Arg(2000)->Arg(20000);

void BM_Rsi(benchmark::State& state) {
    const auto candles = walk(static_cast<std::size_t>(state.range(0)));
    std::vector<double> close;
    for (const auto& c : candles) close.push_back(c.close);
    for (auto _ : state) benchmark::DoNotOptimize(indicators::rsi(close));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rsi)->Arg(2000)->Arg(20000);

void BM_Enrich(benchmark::State& state) {
    const auto candles = walk(2000);
    for (auto _ : state) benchmark::DoNotOptimize(enrich(candles));
}
BENCHMARK(BM_Enrich);

void BM_Evaluate(benchmark::State& state) {
    const auto variant = static_cast<Variant>(state.range(0));
    const PrimitiveSet& set = PrimitiveSet::of(variant);
    Rng rng = derive_rng(3, 0, 0);
    std::vector<ExprTree> trees;
    for (int i = 0; i < 64; ++i) trees.push_back(generate_tree(set, 5, true, rng));
    std::size_t k = 0;
    for (auto _ : state) {
        const EvalContext ctx{&table(), 100 + k % 1000, 1.5};
        benchmark::DoNotOptimize(evaluate(trees[k % trees.size()], ctx));
        ++k;
    }
    state.SetLabel(std::string(variant_name(variant)));
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 3);

void BM_Backtest(benchmark::State& state) {
    const auto variant = static_cast<Variant>(state.range(0));
    Rng rng = derive_rng(5, 0, 0);
    const ExprTree tree = generate_tree(PrimitiveSet::of(variant), 4, false, rng);
    const RowRange rows{0, table().size()};
    for (auto _ : state) benchmark::DoNotOptimize(run_backtest(tree, table(), rows));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows.size()));
    state.SetLabel(std::string(variant_name(variant)));
}
BENCHMARK(BM_Backtest)->DenseRange(0, 3);

void BM_Generation(benchmark::State& state) {
    EvolutionConfig config;
    config.variant = Variant::STVGP;
    config.population_size = 200;
    config.tournament_size = 7;
    const auto pop = init_population(config, PrimitiveSet::of(config.variant));
    const RowRange rows{0, 400};
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_population(pop, table(), rows, 1));
}
BENCHMARK(BM_Generation)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

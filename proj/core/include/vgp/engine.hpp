#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "vgp/backtest.hpp"
#include "vgp/market_data.hpp"
#include "vgp/primitives.hpp"
#include "vgp/tree.hpp"

namespace vgp {

using Rng = std::mt19937_64;

/// Independent generator for (seed, a, b); used to give every generation and
/// every offspring slot its own stream.
Rng derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

struct TreeLimits {
    std::size_t max_depth = 13;
    std::size_t max_size = 90;

    bool admits(const ExprTree& t) const noexcept { return t.depth() <= max_depth && t.size() <= max_size; }
};

struct EvolutionConfig {
    Variant variant = Variant::STVGP;
    std::size_t population_size = 3000;
    std::size_t generations = 50;
    std::size_t tournament_size = 30;
    double mutation_rate = 0.001;  ///< per node
    double crossover_rate = 0.9;
    std::size_t elitism = 1;
    TreeLimits limits;
    std::size_t init_min_depth = 2;
    std::size_t init_max_depth = 6;
    std::uint64_t seed = 1;
    std::size_t eval_threads = 1;  ///< does not affect results

    /// Throws InputError describing the first invalid field.
    void validate() const;
};

/// Per-generation resampling of the training rows.
struct TrainingRegime {
    std::size_t buffer_days = 100;
    std::size_t segments = 3;
    std::size_t super_every = 50;
};

struct TrainingWindow {
    std::size_t start = 0;
    std::size_t width = 0;
    std::vector<RowRange> parts;
    bool super_generation = false;
    RowRange evaluation;  ///< the part (or whole window) scored this generation
};

/// Window for 1-based `generation`: start drawn uniformly from the buffer,
/// fixed width `train_rows - buffer_days`, split into equal parts with the
/// remainder on the last. Normal generations score part `generation % segments`;
/// multiples of `super_every` score the whole window.
TrainingWindow sample_training_window(std::size_t train_rows, std::size_t generation, const TrainingRegime& regime,
                                      Rng& rng);

/// Random tree of `root` kind whose depth is exactly `depth` (full) or at most
/// `depth` (grow). Size is not constrained here.
ExprTree generate_tree(const PrimitiveSet& set, std::size_t depth, bool full, Rng& rng);

/// Ramped half-and-half; individual i uses its own stream so populations are
/// reproducible from the seed alone.
std::vector<ExprTree> init_population(const EvolutionConfig& config, const PrimitiveSet& set);

/// Index of the tournament winner among `k` draws with replacement. Ties go
/// to the smaller tree, then to the lower index.
std::size_t tournament_select(std::span<const Fitness> fitness, std::span<const ExprTree> population, std::size_t k,
                              Rng& rng);

/// Swaps kind-compatible subtrees. Children outside `limits` are replaced by
/// the corresponding parent; after 10 attempts without a compatible pair the
/// parents are returned.
std::pair<ExprTree, ExprTree> subtree_crossover(const ExprTree& a, const ExprTree& b, const TreeLimits& limits,
                                                Rng& rng);

/// Replaces each node with probability `rate` by a different symbol of the
/// same signature. Nodes without alternatives are left alone.
ExprTree point_mutation(const ExprTree& tree, double rate, Rng& rng);

/// Backtest fitness of every individual over `rows`, in population order.
std::vector<Fitness> evaluate_population(std::span<const ExprTree> population, const FeatureTable& table,
                                         RowRange rows, std::size_t threads);

struct GenerationStats {
    std::size_t generation = 0;
    Fitness best = Fitness::inactive();
    Fitness median = Fitness::inactive();
    double mean_size = 0.0;
    double mean_depth = 0.0;
};

struct RunResult {
    std::uint64_t seed = 0;
    std::vector<GenerationStats> trace;
    ExprTree champion;
    BacktestResult train;  ///< champion on the whole training table
    BacktestResult test;   ///< champion on the whole test table
};

/// Called after each generation is scored.
using GenerationObserver =
    std::function<void(std::size_t generation, std::span<const ExprTree> population, std::span<const Fitness> fitness)>;

/// Full evolutionary run. The champion is the best individual of the final
/// population scored on the entire training table.
RunResult evolve(const EvolutionConfig& config, const TrainingRegime& regime, const FeatureTable& train,
                 const FeatureTable& test, const GenerationObserver& observer = {});

/// `generation,best_fitness,median_fitness,mean_size,mean_depth`
void write_run_log(std::ostream& out, std::span<const GenerationStats> trace);

} // namespace vgp

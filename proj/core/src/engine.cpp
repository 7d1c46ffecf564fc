#include "vgp/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "vgp/error.hpp"
#include "vgp/text.hpp"

namespace vgp {
namespace {

// Stream tag for the per-generation window draw; offspring use their index.
constexpr std::uint64_t kWindowStream = ~std::uint64_t{0};
constexpr std::size_t kCrossoverAttempts = 10;
constexpr std::size_t kInitAttemptsPerDepth = 20;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

class Generator {
public:
    Generator(const PrimitiveSet& set, Rng& rng) : set_(set), rng_(rng) {}

    void build(Kind kind, std::size_t remaining, bool full, bool is_root, std::vector<SymbolId>& out) {
        std::vector<SymbolId> fns;
        for (SymbolId id : set_.functions(kind)) {
            if (set_.min_depth(id).value_or(remaining + 1) <= remaining) fns.push_back(id);
        }
        const auto terms = set_.terminals(kind);

        SymbolId pick;
        if (fns.empty()) {
            if (terms.empty()) throw std::logic_error("generate_tree: no symbol fits the depth budget");
            pick = terms[uniform_index(rng_, terms.size())];
        } else if (terms.empty() || full || is_root) {
            pick = fns[uniform_index(rng_, fns.size())];
        } else {
            const std::size_t k = uniform_index(rng_, fns.size() + terms.size());
            pick = k < fns.size() ? fns[k] : terms[k - fns.size()];
        }

        out.push_back(pick);
        const Symbol& s = set_.symbol(pick);
        for (Kind arg : s.arg_kinds()) build(arg, remaining - 1, full, false, out);
    }

private:
    const PrimitiveSet& set_;
    Rng& rng_;
};

bool better(std::span<const Fitness> fitness, std::span<const ExprTree> pop, std::size_t a, std::size_t b) {
    if (fitness[a] > fitness[b]) return true;
    if (fitness[a] < fitness[b]) return false;
    if (pop[a].size() != pop[b].size()) return pop[a].size() < pop[b].size();
    return a < b;
}

std::size_t best_index(std::span<const Fitness> fitness, std::span<const ExprTree> pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (better(fitness, pop, i, best)) best = i;
    }
    return best;
}

Fitness median_of(std::span<const Fitness> fitness) {
    std::vector<Fitness> sorted(fitness.begin(), fitness.end());
    std::sort(sorted.begin(), sorted.end(), [](const Fitness& a, const Fitness& b) { return a < b; });
    const std::size_t n = sorted.size();
    const Fitness& lo = sorted[(n - 1) / 2];
    const Fitness& hi = sorted[n / 2];
    if (lo.is_inactive() || hi.is_inactive()) return lo;
    return Fitness::of(0.5 * (lo.value() + hi.value()));
}

} // namespace

Rng derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0x9e3779b97f4a7c15ULL + 1));
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
    return Rng(seq);
}

void EvolutionConfig::validate() const {
    auto fail = [](const std::string& what) { throw InputError("invalid evolution config: " + what); };
    if (population_size < 1) fail("population_size must be >= 1");
    if (generations < 1) fail("generations must be >= 1");
    if (tournament_size < 1 || tournament_size > population_size) fail("tournament_size must be in [1, population]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) fail("mutation_rate must be in [0, 1]");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) fail("crossover_rate must be in [0, 1]");
    if (elitism > population_size) fail("elitism exceeds population_size");
    if (limits.max_size < 1) fail("max_size must be >= 1");
    if (init_min_depth > init_max_depth) fail("init depth range is empty");
    if (init_max_depth > limits.max_depth) fail("init_max_depth exceeds max_depth");
    const auto root_depth = PrimitiveSet::of(variant).min_depth(PrimitiveSet::of(variant).root_kind());
    if (!root_depth || *root_depth > init_max_depth) fail("primitive set cannot build a tree within init depth");
}

TrainingWindow sample_training_window(std::size_t train_rows, std::size_t generation, const TrainingRegime& regime,
                                      Rng& rng) {
    if (regime.segments == 0 || regime.super_every == 0) throw InputError("training regime: zero segments or period");
    if (train_rows < regime.buffer_days + 2 * regime.segments) {
        throw InputError("training set of " + std::to_string(train_rows) + " rows is too short for a " +
                         std::to_string(regime.buffer_days) + "-day buffer and " + std::to_string(regime.segments) +
                         " segments");
    }
    TrainingWindow w;
    w.start = regime.buffer_days > 0 ? uniform_index(rng, regime.buffer_days) : 0;
    w.width = train_rows - regime.buffer_days;
    const std::size_t part = w.width / regime.segments;
    for (std::size_t i = 0; i < regime.segments; ++i) {
        const std::size_t b = w.start + i * part;
        const std::size_t e = i + 1 == regime.segments ? w.start + w.width : b + part;
        w.parts.push_back(RowRange{b, e});
    }
    w.super_generation = generation % regime.super_every == 0;
    w.evaluation = w.super_generation ? RowRange{w.start, w.start + w.width} : w.parts[generation % regime.segments];
    return w;
}

ExprTree generate_tree(const PrimitiveSet& set, std::size_t depth, bool full, Rng& rng) {
    const auto need = set.min_depth(set.root_kind());
    if (!need) throw std::logic_error("generate_tree: root kind is unreachable");
    depth = std::max(depth, *need);
    std::vector<SymbolId> prefix;
    Generator(set, rng).build(set.root_kind(), depth, full, depth > 0, prefix);
    return ExprTree(set.variant(), std::move(prefix));
}

std::vector<ExprTree> init_population(const EvolutionConfig& config, const PrimitiveSet& set) {
    config.validate();
    std::vector<ExprTree> pop;
    pop.reserve(config.population_size);
    for (std::size_t i = 0; i < config.population_size; ++i) {
        Rng rng = derive_rng(config.seed, 0, i);
        std::size_t depth = config.init_min_depth +
                            uniform_index(rng, config.init_max_depth - config.init_min_depth + 1);
        const bool full = coin(rng, 0.5);
        std::optional<ExprTree> tree;
        while (!tree) {
            for (std::size_t attempt = 0; attempt < kInitAttemptsPerDepth && !tree; ++attempt) {
                ExprTree t = generate_tree(set, depth, full, rng);
                if (config.limits.admits(t)) tree = std::move(t);
            }
            if (!tree) {
                if (depth == 0) throw InputError("init_population: cannot satisfy the size limit");
                --depth;
            }
        }
        pop.push_back(std::move(*tree));
    }
    return pop;
}

std::size_t tournament_select(std::span<const Fitness> fitness, std::span<const ExprTree> population, std::size_t k,
                              Rng& rng) {
    std::size_t winner = uniform_index(rng, population.size());
    for (std::size_t i = 1; i < k; ++i) {
        const std::size_t challenger = uniform_index(rng, population.size());
        if (better(fitness, population, challenger, winner)) winner = challenger;
    }
    return winner;
}

std::pair<ExprTree, ExprTree> subtree_crossover(const ExprTree& a, const ExprTree& b, const TreeLimits& limits,
                                                Rng& rng) {
    const PrimitiveSet& set = a.primitives();
    std::vector<std::size_t> candidates;
    for (std::size_t attempt = 0; attempt < kCrossoverAttempts; ++attempt) {
        const std::size_t i = uniform_index(rng, a.size());
        const Kind kind = set.symbol(a.nodes()[i]).result;
        candidates.clear();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (set.symbol(b.nodes()[j]).result == kind) candidates.push_back(j);
        }
        if (candidates.empty()) continue;
        const std::size_t j = candidates[uniform_index(rng, candidates.size())];
        const std::size_t ie = a.subtree_end(i);
        const std::size_t je = b.subtree_end(j);
        ExprTree child_a = a.replace(i, ie, b.nodes().subspan(j, je - j));
        ExprTree child_b = b.replace(j, je, a.nodes().subspan(i, ie - i));
        return {limits.admits(child_a) ? std::move(child_a) : a, limits.admits(child_b) ? std::move(child_b) : b};
    }
    return {a, b};
}

ExprTree point_mutation(const ExprTree& tree, double rate, Rng& rng) {
    if (rate <= 0.0) return tree;
    const PrimitiveSet& set = tree.primitives();
    std::vector<SymbolId> nodes(tree.nodes().begin(), tree.nodes().end());
    bool changed = false;
    for (SymbolId& id : nodes) {
        if (!coin(rng, rate)) continue;
        const auto alts = set.alternatives(id);
        if (alts.empty()) continue;
        id = alts[uniform_index(rng, alts.size())];
        changed = true;
    }
    return changed ? ExprTree(tree.variant(), std::move(nodes)) : tree;
}

std::vector<Fitness> evaluate_population(std::span<const ExprTree> population, const FeatureTable& table,
                                         RowRange rows, std::size_t threads) {
    std::vector<Fitness> fitness(population.size(), Fitness::inactive());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < population.size(); i = next++) {
            try {
                fitness[i] = run_backtest(population[i], table, rows).fitness;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, population.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return fitness;
}

RunResult evolve(const EvolutionConfig& config, const TrainingRegime& regime, const FeatureTable& train,
                 const FeatureTable& test, const GenerationObserver& observer) {
    config.validate();
    const PrimitiveSet& set = PrimitiveSet::of(config.variant);

    RunResult result;
    result.seed = config.seed;
    std::vector<ExprTree> pop = init_population(config, set);

    for (std::size_t g = 1; g <= config.generations; ++g) {
        Rng window_rng = derive_rng(config.seed, g, kWindowStream);
        const TrainingWindow window = sample_training_window(train.size(), g, regime, window_rng);
        const std::vector<Fitness> fitness = evaluate_population(pop, train, window.evaluation, config.eval_threads);

        GenerationStats stats;
        stats.generation = g;
        stats.best = fitness[best_index(fitness, pop)];
        stats.median = median_of(fitness);
        for (const ExprTree& t : pop) {
            stats.mean_size += static_cast<double>(t.size());
            stats.mean_depth += static_cast<double>(t.depth());
        }
        stats.mean_size /= static_cast<double>(pop.size());
        stats.mean_depth /= static_cast<double>(pop.size());
        result.trace.push_back(stats);
        if (observer) observer(g, pop, fitness);
        if (g == config.generations) break;

        std::vector<std::size_t> order(pop.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(config.elitism), order.end(),
                          [&](std::size_t a, std::size_t b) { return better(fitness, pop, a, b); });

        std::vector<ExprTree> next;
        next.reserve(pop.size());
        for (std::size_t i = 0; i < config.elitism; ++i) next.push_back(pop[order[i]]);
        for (std::size_t slot = config.elitism; slot < pop.size(); ++slot) {
            Rng rng = derive_rng(config.seed, g, slot);
            const std::size_t p1 = tournament_select(fitness, pop, config.tournament_size, rng);
            ExprTree child = pop[p1];
            if (coin(rng, config.crossover_rate)) {
                const std::size_t p2 = tournament_select(fitness, pop, config.tournament_size, rng);
                child = subtree_crossover(pop[p1], pop[p2], config.limits, rng).first;
            }
            next.push_back(point_mutation(child, config.mutation_rate, rng));
        }
        pop = std::move(next);
    }

    const std::vector<Fitness> full = evaluate_population(pop, train, RowRange{0, train.size()}, config.eval_threads);
    const std::size_t champ = best_index(full, pop);
    result.champion = pop[champ];
    result.train = run_backtest(result.champion, train, RowRange{0, train.size()});
    result.test = run_backtest(result.champion, test, RowRange{0, test.size()});
    return result;
}

void write_run_log(std::ostream& out, std::span<const GenerationStats> trace) {
    out << "generation,best_fitness,median_fitness,mean_size,mean_depth\n";
    for (const GenerationStats& s : trace) {
        out << s.generation << ',' << s.best.to_string() << ',' << s.median.to_string() << ','
            << text::format_double(s.mean_size) << ',' << text::format_double(s.mean_depth) << '\n';
    }
}

} // namespace vgp

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vgp/backtest.hpp"
#include "vgp/engine.hpp"
#include "vgp/primitives.hpp"
#include "vgp/stats.hpp"

namespace vgp::experiment {

namespace fs = std::filesystem;

/// Environment variable naming the default output root.
inline constexpr const char* kOutputRootEnv = "VGPTRADE_OUT";

struct ExperimentSpec {
    std::vector<fs::path> datasets;  ///< raw OHLCV CSV files
    std::vector<Variant> variants{kAllVariants.begin(), kAllVariants.end()};
    std::size_t runs = 10;
    std::uint64_t base_seed = 1;
    EvolutionConfig evolution;  ///< variant and seed are set per run
    TrainingRegime regime;
    fs::path out_dir;
    std::size_t jobs = 1;
    bool resume = false;  ///< keep completed run directories instead of recomputing

    void validate() const;
};

/// Applies one `key = value` setting. Throws InputError for unknown keys or bad values.
void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value);

/// Plain-text configuration: one `key = value` per line, `#` starts a comment.
ExperimentSpec parse_experiment_config(std::istream& in, std::string_view source = "<config>");
ExperimentSpec load_experiment_config(const fs::path& path);

/// Output directory used when none is configured: $VGPTRADE_OUT or "results".
fs::path default_output_root();

struct EnrichSummary {
    std::size_t input_rows = 0;
    std::size_t output_rows = 0;
};

EnrichSummary cmd_enrich(const fs::path& input, const fs::path& output);

enum class RunStatus { Pending, Ok, Failed };

std::string_view run_status_name(RunStatus s) noexcept;

struct RunRecord {
    std::string dataset;
    Variant variant = Variant::GP;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    RunStatus status = RunStatus::Pending;
    Fitness train = Fitness::inactive();
    Fitness test = Fitness::inactive();
    fs::path dir;  ///< relative to the output directory
    std::string error;
};

struct EvolveSummary {
    std::vector<RunRecord> runs;
    std::size_t failures = 0;
    fs::path index;
};

/// Runs every (dataset, variant, seed = base_seed + run) combination, up to
/// `jobs` at a time. Each run writes `run_log.csv`, `champion.json` and
/// `summary.csv` into its own directory; `index.csv` and `failures.csv` are
/// rewritten as runs finish, so an interrupted experiment lists its gaps.
EvolveSummary cmd_evolve(const ExperimentSpec& spec, std::ostream* progress = nullptr);

/// Reads `index.csv` back.
std::vector<RunRecord> load_index(const fs::path& index_path);

struct MethodSummary {
    Variant method = Variant::GP;
    std::size_t samples = 0;
    stats::Quartiles train;
    stats::Quartiles test;
};

struct DatasetReport {
    std::string dataset;
    std::vector<MethodSummary> methods;
    /// Pairwise Kruskal-Wallis p-values on test fitness; the diagonal is unset.
    std::vector<std::vector<std::optional<double>>> p_values;
    stats::RankSummary ranks;
};

/// Builds per-dataset comparison tables from an index (file or output
/// directory) and writes them as CSV into `report_dir`.
std::vector<DatasetReport> cmd_report(const fs::path& index_or_dir, const fs::path& report_dir);

void print_report(std::ostream& out, const std::vector<DatasetReport>& reports);

enum class DataSplit { Train, Test, All };

std::optional<DataSplit> data_split_from_name(std::string_view name) noexcept;

struct BacktestRequest {
    fs::path champion;
    fs::path data;
    DataSplit split = DataSplit::Test;
    std::optional<RowRange> rows;  ///< within the chosen split; whole split if unset
    fs::path ledger;               ///< optional ledger CSV
};

struct BacktestReport {
    Variant variant = Variant::GP;
    std::string tree;
    RowRange rows;
    BacktestResult result;
};

/// Re-runs a saved champion on raw OHLCV data. Throws ParseError for unknown
/// primitives and InputError for typing or data mismatches.
BacktestReport cmd_backtest(const BacktestRequest& request);

/// Parses `begin:end` (half-open) row ranges.
std::optional<RowRange> parse_row_range(std::string_view text);

} // namespace vgp::experiment

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vgp/error.hpp"
#include "vgp/experiment.hpp"
#include "vgp/text.hpp"

namespace {

namespace ex = vgp::experiment;

constexpr int kExitInput = 2;
constexpr int kExitRuntime = 3;

struct EvolveFlags {
    std::string config;
    std::string data;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::string variant;
    std::optional<std::size_t> population;
    std::optional<std::size_t> generations;
    std::string out;
    std::optional<std::size_t> jobs;
    bool resume = false;
};

ex::ExperimentSpec build_spec(const EvolveFlags& f) {
    ex::ExperimentSpec spec = f.config.empty() ? ex::ExperimentSpec{} : ex::load_experiment_config(f.config);
    if (!f.data.empty()) ex::apply_setting(spec, "datasets", f.data);
    if (!f.variant.empty()) ex::apply_setting(spec, "variants", f.variant);
    if (f.seed) spec.base_seed = *f.seed;
    if (f.runs) spec.runs = *f.runs;
    if (f.population) spec.evolution.population_size = *f.population;
    if (f.generations) spec.evolution.generations = *f.generations;
    if (f.jobs) spec.jobs = *f.jobs;
    if (f.resume) spec.resume = true;
    if (!f.out.empty()) spec.out_dir = f.out;
    if (spec.out_dir.empty()) spec.out_dir = ex::default_output_root();
    return spec;
}

void print_result(const char* label, const vgp::BacktestResult& r) {
    std::cout << label << "roi=" << vgp::text::format_double(r.roi)
              << " win_rate=" << vgp::text::format_double(r.win_rate) << " trades=" << r.n_trades
              << " fitness=" << r.fitness.to_string() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolve, backtest and compare GP trading strategies"};
    app.require_subcommand(1);

    auto* enrich = app.add_subcommand("enrich", "Compute indicator features from an OHLCV CSV");
    std::string enrich_in, enrich_out;
    enrich->add_option("input", enrich_in, "OHLCV CSV (date,open,high,low,close,volume)")->required();
    enrich->add_option("output", enrich_out, "Enriched CSV to write")->required();

    auto* evolve = app.add_subcommand("evolve", "Run a multi-seed experiment");
    EvolveFlags ef;
    evolve->add_option("--config", ef.config, "key = value experiment file");
    evolve->add_option("--data", ef.data, "Comma-separated OHLCV CSV files");
    evolve->add_option("--seed", ef.seed, "Base seed; run i uses seed + i");
    evolve->add_option("--runs", ef.runs, "Runs per variant and dataset");
    evolve->add_option("--variant", ef.variant, "Comma-separated subset of GP,VGP,CVGP,STVGP");
    evolve->add_option("--population", ef.population, "Population size");
    evolve->add_option("--generations", ef.generations, "Number of generations");
    evolve->add_option("--out", ef.out, std::string("Output directory (default $") + ex::kOutputRootEnv + " or results)");
    evolve->add_option("--jobs", ef.jobs, "Concurrent runs");
    evolve->add_flag("--resume", ef.resume, "Keep run directories that already completed");

    auto* backtest = app.add_subcommand("backtest", "Backtest a saved champion");
    std::string bt_champion, bt_data, bt_split = "test", bt_rows, bt_ledger;
    backtest->add_option("--champion", bt_champion, "champion.json from a run directory")->required();
    backtest->add_option("--data", bt_data, "OHLCV CSV the champion runs on")->required();
    backtest->add_option("--split", bt_split, "train, test or all")->capture_default_str();
    backtest->add_option("--rows", bt_rows, "Half-open row range begin:end within the split");
    backtest->add_option("--ledger", bt_ledger, "Write the per-row ledger CSV here");

    auto* report = app.add_subcommand("report", "Summarise an experiment");
    std::string rp_index, rp_dir;
    report->add_option("index", rp_index, "index.csv or experiment directory (default: output root)");
    report->add_option("--out", rp_dir, "Report directory (default <experiment>/report)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*enrich) {
            const auto s = ex::cmd_enrich(enrich_in, enrich_out);
            std::cout << "enriched " << s.input_rows << " rows -> " << s.output_rows << " rows: " << enrich_out << '\n';
        } else if (*evolve) {
            const ex::ExperimentSpec spec = build_spec(ef);
            const auto summary = ex::cmd_evolve(spec, &std::cout);
            std::cout << summary.runs.size() - summary.failures << '/' << summary.runs.size()
                      << " runs completed; index: " << summary.index.string() << '\n';
            if (summary.failures > 0) {
                std::cerr << "error: " << summary.failures << " runs failed; see "
                          << (spec.out_dir / "failures.csv").string() << '\n';
                return kExitRuntime;
            }
        } else if (*backtest) {
            ex::BacktestRequest req;
            req.champion = bt_champion;
            req.data = bt_data;
            const auto split = ex::data_split_from_name(bt_split);
            if (!split) throw vgp::InputError("--split must be train, test or all");
            req.split = *split;
            if (!bt_rows.empty()) {
                req.rows = ex::parse_row_range(bt_rows);
                if (!req.rows) throw vgp::InputError("--rows must look like begin:end with begin < end");
            }
            req.ledger = bt_ledger;
            const auto r = ex::cmd_backtest(req);
            std::cout << "variant=" << vgp::variant_name(r.variant) << " rows=" << r.rows.begin << ':' << r.rows.end
                      << '\n'
                      << "tree=" << r.tree << '\n';
            print_result("", r.result);
            if (r.result.fitness.is_inactive()) std::cout << "no trades: inactive penalty applied\n";
        } else if (*report) {
            const ex::fs::path src = rp_index.empty() ? ex::default_output_root() : ex::fs::path(rp_index);
            const ex::fs::path base = ex::fs::is_directory(src) ? src : src.parent_path();
            const ex::fs::path dir = rp_dir.empty() ? base / "report" : ex::fs::path(rp_dir);
            const auto reports = ex::cmd_report(src, dir);
            ex::print_report(std::cout, reports);
            std::cout << "report written to " << dir.string() << '\n';
        }
    } catch (const vgp::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const vgp::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << '\n';
        return kExitRuntime;
    }
    return EXIT_SUCCESS;
}

#include "vgp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vgp/error.hpp"
#include "vgp/market_data.hpp"
#include "vgp/text.hpp"
#include "vgp/tree.hpp"

namespace vgp::experiment {
namespace {

using nlohmann::json;

std::size_t to_count(std::string_view key, std::string_view value) {
    const auto v = text::parse_int(value);
    if (!v || *v < 0) throw InputError("setting '" + std::string(key) + "': expected a non-negative integer");
    return static_cast<std::size_t>(*v);
}

double to_real(std::string_view key, std::string_view value) {
    const auto v = text::parse_double(value);
    if (!v) throw InputError("setting '" + std::string(key) + "': expected a number");
    return *v;
}

bool to_flag(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw InputError("setting '" + std::string(key) + "': expected true or false");
}

std::vector<std::string_view> list_items(std::string_view value) {
    std::vector<std::string_view> out;
    for (auto item : text::split(value, ',')) {
        item = text::trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

// Write-then-rename so readers never see a partial file.
void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    write_file(tmp, content);
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json result_json(const BacktestResult& r) {
    return json{{"roi", r.roi}, {"win_rate", r.win_rate}, {"trades", r.n_trades}, {"fitness", r.fitness.to_string()}};
}

json config_json(const EvolutionConfig& c, const TrainingRegime& regime) {
    return json{{"population", c.population_size},
                {"generations", c.generations},
                {"tournament", c.tournament_size},
                {"mutation_rate", c.mutation_rate},
                {"crossover_rate", c.crossover_rate},
                {"elitism", c.elitism},
                {"max_depth", c.limits.max_depth},
                {"max_size", c.limits.max_size},
                {"init_min_depth", c.init_min_depth},
                {"init_max_depth", c.init_max_depth},
                {"buffer_days", regime.buffer_days},
                {"segments", regime.segments},
                {"super_every", regime.super_every}};
}

std::string index_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "dataset,variant,run,seed,status,train_fitness,test_fitness,path\n";
    for (const RunRecord& r : records) {
        const bool ok = r.status == RunStatus::Ok;
        out << r.dataset << ',' << variant_name(r.variant) << ',' << r.run << ',' << r.seed << ','
            << run_status_name(r.status) << ',' << (ok ? r.train.to_string() : "") << ','
            << (ok ? r.test.to_string() : "") << ',' << r.dir.generic_string() << '\n';
    }
    return out.str();
}

std::string failures_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "dataset,variant,run,seed,status,error\n";
    for (const RunRecord& r : records) {
        if (r.status == RunStatus::Ok) continue;
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        out << r.dataset << ',' << variant_name(r.variant) << ',' << r.run << ',' << r.seed << ','
            << run_status_name(r.status) << ',' << err << '\n';
    }
    return out.str();
}

struct Dataset {
    std::string name;
    fs::path path;
    FeatureTable train;
    FeatureTable test;
};

// Result of a completed run directory, if its summary exists.
std::optional<std::pair<Fitness, Fitness>> read_summary(const fs::path& dir) {
    const fs::path path = dir / "summary.csv";
    if (!fs::exists(path)) return std::nullopt;
    std::istringstream in(read_file(path));
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    const auto fields = text::split(row, ',');
    if (fields.size() < 4) return std::nullopt;
    const auto train = Fitness::parse(fields[2]);
    const auto test = Fitness::parse(fields[3]);
    if (!train || !test) return std::nullopt;
    return std::make_pair(*train, *test);
}

void execute_run(const ExperimentSpec& spec, const Dataset& data, RunRecord& record, const fs::path& out_root) {
    EvolutionConfig config = spec.evolution;
    config.variant = record.variant;
    config.seed = record.seed;
    const RunResult result = evolve(config, spec.regime, data.train, data.test);

    const fs::path final_dir = out_root / record.dir;
    fs::path work_dir = final_dir;
    work_dir += ".partial";
    fs::remove_all(work_dir);
    fs::create_directories(work_dir);

    std::ostringstream log;
    write_run_log(log, result.trace);
    write_file(work_dir / "run_log.csv", log.str());

    json champion{{"variant", std::string(variant_name(record.variant))},
                  {"tree", to_string(result.champion)},
                  {"seed", record.seed},
                  {"run", record.run},
                  {"dataset", data.name},
                  {"config", config_json(config, spec.regime)},
                  {"train", result_json(result.train)},
                  {"test", result_json(result.test)}};
    write_file(work_dir / "champion.json", champion.dump(2) + "\n");

    std::ostringstream summary;
    summary << "seed,variant,train_fitness,test_fitness,train_roi,train_win_rate,train_trades,test_roi,test_win_rate,"
               "test_trades\n"
            << record.seed << ',' << variant_name(record.variant) << ',' << result.train.fitness.to_string() << ','
            << result.test.fitness.to_string() << ',' << text::format_double(result.train.roi) << ','
            << text::format_double(result.train.win_rate) << ',' << result.train.n_trades << ','
            << text::format_double(result.test.roi) << ',' << text::format_double(result.test.win_rate) << ','
            << result.test.n_trades << '\n';
    write_file(work_dir / "summary.csv", summary.str());

    fs::remove_all(final_dir);
    fs::rename(work_dir, final_dir);

    record.train = result.train.fitness;
    record.test = result.test.fitness;
    record.status = RunStatus::Ok;
}

} // namespace

void ExperimentSpec::validate() const {
    if (datasets.empty()) throw InputError("experiment: no datasets given");
    for (const auto& d : datasets) {
        if (!fs::exists(d)) throw InputError("experiment: dataset not found: " + d.string());
    }
    std::set<std::string> stems;
    for (const auto& d : datasets) {
        if (!stems.insert(d.stem().string()).second) {
            throw InputError("experiment: duplicate dataset name " + d.stem().string());
        }
    }
    if (variants.empty()) throw InputError("experiment: no variants selected");
    if (runs < 1) throw InputError("experiment: runs must be >= 1");
    if (jobs < 1) throw InputError("experiment: jobs must be >= 1");
    if (out_dir.empty()) throw InputError("experiment: no output directory");
    evolution.validate();
}

void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value) {
    key = text::trim(key);
    value = text::trim(value);
    EvolutionConfig& evo = spec.evolution;
    if (key == "datasets" || key == "data") {
        spec.datasets.clear();
        for (auto item : list_items(value)) spec.datasets.emplace_back(std::string(item));
    } else if (key == "variants" || key == "variant") {
        spec.variants.clear();
        for (auto item : list_items(value)) {
            const auto v = variant_from_name(item);
            if (!v) throw InputError("unknown variant '" + std::string(item) + "' (expected GP, VGP, CVGP or STVGP)");
            if (std::find(spec.variants.begin(), spec.variants.end(), *v) == spec.variants.end()) {
                spec.variants.push_back(*v);
            }
        }
    } else if (key == "runs") {
        spec.runs = to_count(key, value);
    } else if (key == "seed") {
        spec.base_seed = to_count(key, value);
    } else if (key == "population") {
        evo.population_size = to_count(key, value);
    } else if (key == "generations") {
        evo.generations = to_count(key, value);
    } else if (key == "tournament") {
        evo.tournament_size = to_count(key, value);
    } else if (key == "mutation_rate") {
        evo.mutation_rate = to_real(key, value);
    } else if (key == "crossover_rate") {
        evo.crossover_rate = to_real(key, value);
    } else if (key == "elitism") {
        evo.elitism = to_count(key, value);
    } else if (key == "max_depth") {
        evo.limits.max_depth = to_count(key, value);
    } else if (key == "max_size") {
        evo.limits.max_size = to_count(key, value);
    } else if (key == "init_min_depth") {
        evo.init_min_depth = to_count(key, value);
    } else if (key == "init_max_depth") {
        evo.init_max_depth = to_count(key, value);
    } else if (key == "eval_threads") {
        evo.eval_threads = std::max<std::size_t>(1, to_count(key, value));
    } else if (key == "buffer_days") {
        spec.regime.buffer_days = to_count(key, value);
    } else if (key == "segments") {
        spec.regime.segments = to_count(key, value);
    } else if (key == "super_every") {
        spec.regime.super_every = to_count(key, value);
    } else if (key == "out") {
        spec.out_dir = std::string(value);
    } else if (key == "jobs") {
        spec.jobs = to_count(key, value);
    } else if (key == "resume") {
        spec.resume = to_flag(key, value);
    } else {
        throw InputError("unknown setting '" + std::string(key) + "'");
    }
}

ExperimentSpec parse_experiment_config(std::istream& in, std::string_view source) {
    ExperimentSpec spec;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = text::trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw InputError(std::string(source) + ": line " + std::to_string(line_no) + ": expected key = value");
        }
        try {
            apply_setting(spec, body.substr(0, eq), body.substr(eq + 1));
        } catch (const InputError& e) {
            throw InputError(std::string(source) + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return spec;
}

ExperimentSpec load_experiment_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    ExperimentSpec spec = parse_experiment_config(in, path.string());
    // Relative dataset paths resolve against the config file's directory.
    for (auto& d : spec.datasets) {
        if (d.is_relative() && !fs::exists(d)) d = path.parent_path() / d;
    }
    return spec;
}

fs::path default_output_root() {
    if (const char* env = std::getenv(kOutputRootEnv); env && *env) return env;
    return "results";
}

EnrichSummary cmd_enrich(const fs::path& input, const fs::path& output) {
    const auto candles = load_ohlcv(input);
    const FeatureTable table = enrich(candles);
    std::ostringstream out;
    write_enriched_csv(out, table);
    if (output.has_parent_path()) fs::create_directories(output.parent_path());
    write_file(output, out.str());
    return {candles.size(), table.size()};
}

std::string_view run_status_name(RunStatus s) noexcept {
    switch (s) {
    case RunStatus::Pending: return "pending";
    case RunStatus::Ok: return "ok";
    case RunStatus::Failed: return "failed";
    }
    return "?";
}

EvolveSummary cmd_evolve(const ExperimentSpec& spec, std::ostream* progress) {
    spec.validate();
    const fs::path& out_root = spec.out_dir;
    fs::create_directories(out_root);

    std::vector<Dataset> datasets;
    for (const auto& path : spec.datasets) {
        const auto candles = load_ohlcv(path);
        const FeatureTable table = enrich(candles);
        auto [train, test] = split_train_test(table);
        datasets.push_back(Dataset{path.stem().string(), path, std::move(train), std::move(test)});
    }

    EvolveSummary summary;
    summary.index = out_root / "index.csv";
    std::vector<std::size_t> dataset_of;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        for (Variant v : spec.variants) {
            for (std::size_t r = 0; r < spec.runs; ++r) {
                RunRecord rec;
                rec.dataset = datasets[d].name;
                rec.variant = v;
                rec.run = r;
                rec.seed = spec.base_seed + r;
                rec.dir = fs::path(rec.dataset) / std::string(variant_name(v)) / ("run_" + std::to_string(r));
                summary.runs.push_back(std::move(rec));
                dataset_of.push_back(d);
            }
        }
    }

    std::mutex mutex;
    auto publish = [&] {
        write_file_atomic(out_root / "index.csv", index_csv(summary.runs));
        write_file_atomic(out_root / "failures.csv", failures_csv(summary.runs));
    };
    {
        std::lock_guard lock(mutex);
        publish();
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < summary.runs.size(); i = next++) {
            RunRecord rec;
            {
                std::lock_guard lock(mutex);
                rec = summary.runs[i];
            }
            try {
                const auto existing = spec.resume ? read_summary(out_root / rec.dir) : std::nullopt;
                if (existing) {
                    rec.train = existing->first;
                    rec.test = existing->second;
                    rec.status = RunStatus::Ok;
                } else {
                    execute_run(spec, datasets[dataset_of[i]], rec, out_root);
                }
            } catch (const std::exception& e) {
                rec.status = RunStatus::Failed;
                rec.error = e.what();
            }
            std::lock_guard lock(mutex);
            summary.runs[i] = rec;
            publish();
            if (progress) {
                *progress << rec.dir.generic_string() << " seed=" << rec.seed << ' ' << run_status_name(rec.status);
                if (rec.status == RunStatus::Ok) {
                    *progress << " train=" << rec.train.to_string() << " test=" << rec.test.to_string();
                } else {
                    *progress << " error=" << rec.error;
                }
                *progress << std::endl;
            }
        }
    };

    const std::size_t workers = std::min(spec.jobs, summary.runs.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    for (const RunRecord& r : summary.runs) summary.failures += r.status == RunStatus::Ok ? 0 : 1;
    return summary;
}

std::vector<RunRecord> load_index(const fs::path& index_path) {
    std::istringstream in(read_file(index_path));
    std::string line;
    std::getline(in, line);
    if (text::trim(line) != "dataset,variant,run,seed,status,train_fitness,test_fitness,path") {
        throw InputError(index_path.string() + ": not a run index");
    }
    std::vector<RunRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        const auto f = text::split(text::trim(line), ',');
        auto bad = [&](const std::string& what) {
            return InputError(index_path.string() + ": line " + std::to_string(line_no) + ": " + what);
        };
        if (f.size() != 8) throw bad("expected 8 fields");
        RunRecord r;
        r.dataset = std::string(f[0]);
        const auto v = variant_from_name(f[1]);
        if (!v) throw bad("unknown variant");
        r.variant = *v;
        const auto run = text::parse_int(f[2]);
        const auto seed = text::parse_int(f[3]);
        if (!run || !seed) throw bad("bad run or seed");
        r.run = static_cast<std::size_t>(*run);
        r.seed = static_cast<std::uint64_t>(*seed);
        if (f[4] == "ok") {
            r.status = RunStatus::Ok;
            const auto train = Fitness::parse(f[5]);
            const auto test = Fitness::parse(f[6]);
            if (!train || !test) throw bad("bad fitness value");
            r.train = *train;
            r.test = *test;
        } else {
            r.status = f[4] == "failed" ? RunStatus::Failed : RunStatus::Pending;
        }
        r.dir = std::string(f[7]);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<DatasetReport> cmd_report(const fs::path& index_or_dir, const fs::path& report_dir) {
    const fs::path index_path = fs::is_directory(index_or_dir) ? index_or_dir / "index.csv" : index_or_dir;
    const auto records = load_index(index_path);

    // dataset -> variant -> run -> (train, test)
    std::map<std::string, std::map<Variant, std::map<std::size_t, std::pair<double, double>>>> grouped;
    for (const RunRecord& r : records) {
        if (r.status != RunStatus::Ok) continue;
        grouped[r.dataset][r.variant][r.run] = {r.train.ordinal(), r.test.ordinal()};
    }
    if (grouped.empty()) throw InputError(index_path.string() + ": no completed runs");

    fs::create_directories(report_dir);
    std::vector<DatasetReport> reports;
    for (const auto& [dataset, by_variant] : grouped) {
        DatasetReport rep;
        rep.dataset = dataset;

        // Runs completed by every method, so the rank matrix is rectangular.
        std::set<std::size_t> common;
        bool first = true;
        for (const auto& [variant, runs] : by_variant) {
            std::set<std::size_t> ids;
            for (const auto& [run, _] : runs) ids.insert(run);
            if (first) {
                common = ids;
                first = false;
            } else {
                std::set<std::size_t> keep;
                std::set_intersection(common.begin(), common.end(), ids.begin(), ids.end(),
                                      std::inserter(keep, keep.begin()));
                common = std::move(keep);
            }
        }
        if (common.size() < 2) {
            throw InputError("report: dataset " + dataset + " has fewer than 2 seeds completed by every method");
        }

        std::vector<std::vector<double>> test_scores;
        for (const auto& [variant, runs] : by_variant) {
            std::vector<double> train, test;
            for (std::size_t run : common) {
                train.push_back(runs.at(run).first);
                test.push_back(runs.at(run).second);
            }
            rep.methods.push_back(MethodSummary{variant, common.size(), stats::quartiles(train), stats::quartiles(test)});
            test_scores.push_back(std::move(test));
        }

        const std::size_t k = rep.methods.size();
        rep.p_values.assign(k, std::vector<std::optional<double>>(k));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                const double p = stats::kruskal_wallis_p(test_scores[i], test_scores[j]);
                rep.p_values[i][j] = p;
                rep.p_values[j][i] = p;
            }
        }
        if (k >= 2) rep.ranks = stats::mean_ranks(test_scores);

        std::ostringstream q;
        q << "split,method,n,min,q1,median,q3,max\n";
        for (const char* split : {"train", "test"}) {
            for (const MethodSummary& m : rep.methods) {
                const stats::Quartiles& s = std::string_view(split) == "train" ? m.train : m.test;
                q << split << ',' << variant_name(m.method) << ',' << m.samples << ',' << text::format_double(s.min)
                  << ',' << text::format_double(s.q1) << ',' << text::format_double(s.median) << ','
                  << text::format_double(s.q3) << ',' << text::format_double(s.max) << '\n';
            }
        }
        write_file(report_dir / (dataset + "_quartiles.csv"), q.str());

        std::ostringstream pv;
        pv << dataset;
        for (const MethodSummary& m : rep.methods) pv << ',' << variant_name(m.method);
        pv << '\n';
        for (std::size_t i = 0; i < k; ++i) {
            pv << variant_name(rep.methods[i].method);
            for (std::size_t j = 0; j < k; ++j) {
                pv << ',' << (rep.p_values[i][j] ? text::format_double(*rep.p_values[i][j]) : "---");
            }
            pv << '\n';
        }
        write_file(report_dir / (dataset + "_pvalues.csv"), pv.str());

        if (k >= 2) {
            std::ostringstream rk;
            rk << "method,mean_rank,critical_distance,groups\n";
            for (std::size_t i = 0; i < k; ++i) {
                std::string groups;
                for (std::size_t g = 0; g < rep.ranks.groups.size(); ++g) {
                    const auto& members = rep.ranks.groups[g];
                    if (std::find(members.begin(), members.end(), i) == members.end()) continue;
                    if (!groups.empty()) groups += ';';
                    groups += std::to_string(g + 1);
                }
                rk << variant_name(rep.methods[i].method) << ',' << text::format_double(rep.ranks.mean_ranks[i]) << ','
                   << text::format_double(rep.ranks.critical_distance) << ',' << groups << '\n';
            }
            write_file(report_dir / (dataset + "_ranks.csv"), rk.str());
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

void print_report(std::ostream& out, const std::vector<DatasetReport>& reports) {
    for (const DatasetReport& rep : reports) {
        out << "== " << rep.dataset << " ==\n";
        out << "test fitness (median [q1, q3]):\n";
        for (const MethodSummary& m : rep.methods) {
            out << "  " << variant_name(m.method) << ": " << text::format_double(m.test.median) << " ["
                << text::format_double(m.test.q1) << ", " << text::format_double(m.test.q3) << "] n=" << m.samples
                << '\n';
        }
        out << "pairwise Kruskal-Wallis p-values:\n";
        for (std::size_t i = 0; i < rep.methods.size(); ++i) {
            out << "  " << variant_name(rep.methods[i].method);
            for (std::size_t j = 0; j < rep.methods.size(); ++j) {
                out << '\t' << (rep.p_values[i][j] ? text::format_double(*rep.p_values[i][j]) : "---");
            }
            out << '\n';
        }
        if (!rep.ranks.mean_ranks.empty()) {
            out << "mean ranks (CD = " << text::format_double(rep.ranks.critical_distance) << "):\n";
            for (std::size_t i = 0; i < rep.methods.size(); ++i) {
                out << "  " << variant_name(rep.methods[i].method) << ": "
                    << text::format_double(rep.ranks.mean_ranks[i]) << '\n';
            }
        }
    }
}

std::optional<DataSplit> data_split_from_name(std::string_view name) noexcept {
    if (name == "train") return DataSplit::Train;
    if (name == "test") return DataSplit::Test;
    if (name == "all") return DataSplit::All;
    return std::nullopt;
}

std::optional<RowRange> parse_row_range(std::string_view s) {
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    const auto b = text::parse_int(s.substr(0, colon));
    const auto e = text::parse_int(s.substr(colon + 1));
    if (!b || !e || *b < 0 || *e <= *b) return std::nullopt;
    return RowRange{static_cast<std::size_t>(*b), static_cast<std::size_t>(*e)};
}

BacktestReport cmd_backtest(const BacktestRequest& request) {
    json champion;
    try {
        champion = json::parse(read_file(request.champion));
    } catch (const json::exception& e) {
        throw InputError(request.champion.string() + ": " + e.what());
    }
    if (!champion.contains("variant") || !champion.contains("tree")) {
        throw InputError(request.champion.string() + ": missing 'variant' or 'tree'");
    }
    const std::string variant_text = champion["variant"].get<std::string>();
    const auto variant = variant_from_name(variant_text);
    if (!variant) throw InputError(request.champion.string() + ": unknown variant '" + variant_text + "'");

    BacktestReport report;
    report.variant = *variant;
    const ExprTree tree = parse_tree(champion["tree"].get<std::string>(), *variant);
    if (const auto violation = typecheck(tree, PrimitiveSet::of(*variant))) {
        throw InputError(request.champion.string() + ": type error at " + violation->message);
    }
    report.tree = to_string(tree);

    const FeatureTable table = enrich(load_ohlcv(request.data));
    FeatureTable scope = table;
    if (request.split != DataSplit::All) {
        auto [train, test] = split_train_test(table);
        scope = request.split == DataSplit::Train ? train : test;
    }
    report.rows = request.rows.value_or(RowRange{0, scope.size()});
    if (report.rows.end > scope.size()) {
        throw InputError("row range " + std::to_string(report.rows.begin) + ":" + std::to_string(report.rows.end) +
                         " exceeds the " + std::to_string(scope.size()) + " available rows");
    }

    std::vector<LedgerRow> ledger;
    report.result = run_backtest(tree, scope, report.rows, request.ledger.empty() ? nullptr : &ledger);
    if (!request.ledger.empty()) {
        std::ostringstream out;
        write_ledger_csv(out, ledger);
        if (request.ledger.has_parent_path()) fs::create_directories(request.ledger.parent_path());
        write_file(request.ledger, out.str());
    }
    return report;
}

} // namespace vgp::experiment

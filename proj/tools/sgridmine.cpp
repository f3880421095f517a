#include <cmath>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgrid/bench.hpp"
#include "sgrid/dataset.hpp"
#include "sgrid/errors.hpp"
#include "sgrid/match.hpp"
#include "sgrid/miner.hpp"
#include "sgrid/report.hpp"
#include "sgrid/synth.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct CommonOpts {
    std::string data;
    std::string estimator = "sgrid";
    int depth = 5;
    int beam_width = 100;
    int top_k = 10;
    double tau = 0;
    bool tau_set = false;
    int block_size = 64;
    bool no_cache = false;
    std::string format = "json";
    std::string out;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_tau) {
    cmd->add_option("--estimator", o.estimator, "sgrid, grid or kde")
        ->check(CLI::IsMember({"sgrid", "grid", "kde"}));
    cmd->add_option("--depth", o.depth, "maximum subspace size");
    cmd->add_option("--beam-width", o.beam_width, "beam width per level");
    cmd->add_option("--top-k", o.top_k, "subspaces returned per query");
    if (with_tau)
        cmd->add_option("--tau", o.tau, "drop subspaces with z >= tau")
            ->each([&o](const std::string&) { o.tau_set = true; });
    cmd->add_option("--block-size", o.block_size, "bit-set word width (8/16/32/64)");
    cmd->add_flag("--no-cache", o.no_cache, "disable the subspace score cache");
    cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", o.out, "write the report here instead of stdout");
    cmd->add_option("--jobs", o.jobs, "worker threads for multi-query runs");
}

sgrid::MinerConfig to_config(const CommonOpts& o) {
    sgrid::MinerConfig cfg;
    cfg.estimator = sgrid::parse_estimator(o.estimator);
    cfg.max_depth = o.depth;
    cfg.beam_width = o.beam_width;
    cfg.top_k = o.top_k;
    if (o.tau_set) cfg.tau = o.tau;
    cfg.block_size = o.block_size;
    return cfg;
}

void emit(const sgrid::RunReport& report, const CommonOpts& o) {
    const std::string payload =
        o.format == "json" ? sgrid::report_to_json(report) : sgrid::render_text(report);
    if (o.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw sgrid::LoadError("cannot write '" + o.out + "'");
        f << payload;
    }
}

int run_mine(const CommonOpts& o, const std::vector<int>& queries) {
    sgrid::RunReport report;
    report.command = "mine";
    report.data_path = o.data;
    report.config = to_config(o);
    report.cache_enabled = !o.no_cache;
    report.jobs = o.jobs;
    report.queries = queries;

    auto t0 = Clock::now();
    const sgrid::Dataset ds = sgrid::load_csv(o.data, sgrid::csv_has_header(o.data));
    report.ingest_ms = ms_since(t0);

    sgrid::MineOutcome outcome =
        sgrid::mine_queries(ds, queries, report.config, !o.no_cache, o.jobs);
    report.build_ms = outcome.build_ms;
    report.search_ms = outcome.search_ms;
    report.cache_hits = outcome.stats.cache_hits;
    report.stats_computed = outcome.stats.stats_computed;
    report.subspaces_scored = outcome.stats.subspaces_scored;
    for (std::size_t i = 0; i < queries.size(); ++i)
        report.results.push_back({queries[i], outcome.per_query[i]});

    emit(report, o);
    return 0;
}

int run_eval(const CommonOpts& o, const std::string& truth_path) {
    sgrid::RunReport report;
    report.command = "eval";
    report.data_path = o.data;
    report.config = to_config(o);
    report.cache_enabled = !o.no_cache;
    report.jobs = o.jobs;

    auto t0 = Clock::now();
    const sgrid::Dataset ds = sgrid::load_csv(o.data, sgrid::csv_has_header(o.data));
    report.ingest_ms = ms_since(t0);

    const sgrid::GroundTruth gt = sgrid::read_truth(truth_path);
    std::vector<int> queries;
    for (const auto& [id, subs] : gt.entries) {
        if (id < 0 || id >= ds.n())
            throw sgrid::LoadError("truth record " + std::to_string(id) +
                                   " is outside the dataset (n=" + std::to_string(ds.n()) + ")");
        for (const auto& s : subs)
            for (int a : s.attrs())
                if (a < 0 || a >= ds.d())
                    throw sgrid::LoadError("truth attribute " + std::to_string(a) +
                                           " is outside the dataset (d=" +
                                           std::to_string(ds.d()) + ")");
        queries.push_back(id);
    }
    report.queries = queries;

    sgrid::MineOutcome outcome =
        sgrid::mine_queries(ds, queries, report.config, !o.no_cache, o.jobs);
    report.build_ms = outcome.build_ms;
    report.search_ms = outcome.search_ms;
    report.cache_hits = outcome.stats.cache_hits;
    report.stats_computed = outcome.stats.stats_computed;
    report.subspaces_scored = outcome.stats.subspaces_scored;

    std::map<int, std::vector<sgrid::ScoredSubspace>> results;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        report.results.push_back({queries[i], outcome.per_query[i]});
        results[queries[i]] = outcome.per_query[i];
    }
    report.match = sgrid::score_matches(results, gt);

    emit(report, o);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outlying aspects mining with grid and kernel density estimators"};
    app.require_subcommand(1);

    // mine
    CommonOpts mine_opts;
    std::vector<int> mine_queries_arg;
    CLI::App* mine = app.add_subcommand("mine", "rank outlying subspaces for query records");
    mine->add_option("--data", mine_opts.data, "input CSV")->required();
    mine->add_option("--query", mine_queries_arg, "query record ids (0-based rows)")
        ->required()
        ->delimiter(',');
    add_common(mine, mine_opts, /*with_tau=*/true);

    // synth
    sgrid::SyntheticSpec spec;
    std::string synth_out;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic benchmark dataset");
    synth->add_option("--dims", spec.d, "attribute count")->required();
    synth->add_option("--size", spec.n, "record count")->required();
    synth->add_option("--groups", spec.group_sizes, "subspace group sizes, e.g. 2,3,5")
        ->required()
        ->delimiter(',');
    synth->add_option("--outliers", spec.outlier_count, "planted outlier count")->required();
    synth->add_option("--seed", spec.seed, "RNG seed");
    synth->add_option("--out", synth_out, "output prefix (<prefix>.csv, <prefix>.truth)")
        ->required();

    // eval
    CommonOpts eval_opts;
    std::string truth_path;
    CLI::App* eval = app.add_subcommand("eval", "mine ground-truth records and score matches");
    eval->add_option("--data", eval_opts.data, "input CSV")->required();
    eval->add_option("--truth", truth_path, "ground truth sidecar file")->required();
    add_common(eval, eval_opts, /*with_tau=*/false);

    // bench
    CommonOpts bench_opts;
    bench_opts.depth = 3;
    std::vector<std::string> bench_estimators_arg{"sgrid", "grid", "kde"};
    int bench_queries = 10;
    int bench_repeat = 1;
    CLI::App* bench = app.add_subcommand("bench", "time estimators on the same query set");
    bench->add_option("--data", bench_opts.data, "input CSV")->required();
    bench->add_option("--estimators", bench_estimators_arg, "comma-separated estimator list")
        ->delimiter(',');
    bench->add_option("--queries", bench_queries, "number of query records (rows 0..N-1)");
    bench->add_option("--depth", bench_opts.depth, "maximum subspace size");
    bench->add_option("--beam-width", bench_opts.beam_width, "beam width per level");
    bench->add_option("--top-k", bench_opts.top_k, "subspaces kept per query");
    bench->add_option("--block-size", bench_opts.block_size, "bit-set word width (8/16/32/64)");
    bench->add_option("--repeat", bench_repeat, "repetitions per estimator");
    bench->add_option("--out", bench_opts.out, "write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (mine->parsed()) return run_mine(mine_opts, mine_queries_arg);

        if (synth->parsed()) {
            sgrid::SynthData data = sgrid::generate(spec);
            sgrid::write_csv(data.data, synth_out + ".csv");
            sgrid::write_truth(data.truth, synth_out + ".truth");
            std::cerr << "wrote " << synth_out << ".csv (" << data.data.n() << "x"
                      << data.data.d() << ") and " << synth_out << ".truth ("
                      << data.truth.entries.size() << " outliers)\n";
            return 0;
        }

        if (eval->parsed()) return run_eval(eval_opts, truth_path);

        if (bench->parsed()) {
            const sgrid::Dataset ds =
                sgrid::load_csv(bench_opts.data, sgrid::csv_has_header(bench_opts.data));
            if (bench_queries < 1 || bench_queries > ds.n())
                throw sgrid::ConfigError("query count must be in [1, n]");
            std::vector<int> queries(static_cast<std::size_t>(bench_queries));
            for (int i = 0; i < bench_queries; ++i) queries[static_cast<std::size_t>(i)] = i;

            std::vector<sgrid::MinerConfig> configs;
            for (const auto& name : bench_estimators_arg) {
                sgrid::MinerConfig cfg = to_config(bench_opts);
                cfg.estimator = sgrid::parse_estimator(name);
                configs.push_back(cfg);
            }
            const auto rows = sgrid::bench_estimators(ds, queries, configs, bench_repeat);
            const std::string csv = sgrid::bench_csv(rows);
            if (bench_opts.out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream f(bench_opts.out, std::ios::binary);
                if (!f) throw sgrid::LoadError("cannot write '" + bench_opts.out + "'");
                f << csv;
            }
            if (bench_repeat > 1) {
                // per-estimator spread across repeats, for quick eyeballing
                for (const auto& name : bench_estimators_arg) {
                    double sum = 0, sum2 = 0;
                    int cnt = 0;
                    for (const auto& r : rows)
                        if (r.estimator == name) {
                            sum += r.search_ms;
                            sum2 += r.search_ms * r.search_ms;
                            ++cnt;
                        }
                    if (cnt > 0) {
                        const double mean = sum / cnt;
                        const double var = std::max(0.0, sum2 / cnt - mean * mean);
                        std::cerr << name << ": search_ms mean=" << mean
                                  << " sd=" << std::sqrt(var) << " over " << cnt << " runs\n";
                    }
                }
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

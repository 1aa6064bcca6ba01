#include "sdvrp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sdvrp/bench.hpp"
#include "sdvrp/errors.hpp"
#include "sdvrp/pipeline.hpp"
#include "sdvrp/tsplib.hpp"

namespace sdvrp::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char *kDataEnv = "SDVRP_DATA_DIR";

class Failure : public std::runtime_error {
public:
    Failure(int code, const std::string &what) : std::runtime_error(what), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

struct SolverFlags {
    std::uint64_t seed = 0;
    std::optional<double> time_limit;
    double deviation = cvrp::SolverConfig{}.deviation;
    int max_stale = cvrp::SolverConfig{}.max_stale_iterations;
    int neighbors = cvrp::SolverConfig{}.neighbor_list_size;

    void add_to(CLI::App &cmd, bool with_seed) {
        if (with_seed) {
            cmd.add_option("--seed", seed, "Solver seed")->capture_default_str();
        }
        cmd.add_option("--time-limit", time_limit, "Stop the search after this many seconds");
        cmd.add_option("--deviation", deviation, "Record-to-record band, in [0, 0.2]")->capture_default_str();
        cmd.add_option("--max-stale", max_stale, "Iterations without a new record before stopping")
            ->capture_default_str();
        cmd.add_option("--neighbors", neighbors, "Neighbour list size")->capture_default_str();
    }

    cvrp::SolverConfig config() const {
        cvrp::SolverConfig cfg;
        cfg.seed = seed;
        cfg.time_limit_seconds = time_limit;
        cfg.deviation = deviation;
        cfg.max_stale_iterations = max_stale;
        cfg.neighbor_list_size = neighbors;
        try {
            cfg.validate();
        } catch (const std::invalid_argument &e) {
            throw Failure(kUsage, e.what());
        }
        return cfg;
    }
};

Strategy strategy_or_usage(const std::string &text) {
    try {
        return parse_strategy(text);
    } catch (const std::invalid_argument &e) {
        throw Failure(kUsage, e.what());
    }
}

Instance load_instance(const std::string &path, std::ostream &err) {
    if (!fs::is_regular_file(path)) {
        throw Failure(kUsage, "instance file not found: " + path);
    }
    return tsplib::read_instance_file(path, [&](std::size_t line, std::string_view msg) {
        err << "warning: " << path << ":" << line << ": " << msg << '\n';
    });
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << content) || !f.flush()) {
        throw Failure(kUsage, "cannot write " + path);
    }
}

// --------------------------------------------------------------------------

struct GenCommand {
    std::string spec;
    std::string out;

    int run(std::ostream &out_stream) const {
        bench::GeneratorSpec parsed;
        try {
            parsed = bench::parse_generator_spec(spec);
        } catch (const std::invalid_argument &e) {
            throw Failure(kUsage, e.what());
        }
        const std::string text = tsplib::write_instance(bench::generate(parsed));
        if (out.empty()) {
            out_stream << text;
        } else {
            write_file(out, text);
        }
        return kOk;
    }
};

struct SplitCommand {
    std::string instance;
    std::string rule = "pasa";
    std::string out;

    int run(std::ostream &out_stream, std::ostream &err) const {
        const Strategy strategy = strategy_or_usage(rule);
        const Instance inst = load_instance(instance, err);
        const ExpandedInstance expanded = expand(inst, strategy);
        out_stream << "instance " << inst.name() << "  strategy " << to_string(strategy) << '\n'
                   << "n=" << inst.size() << " m=" << expanded.expanded_size() << '\n';
        if (const auto *pasa = std::get_if<Pasa>(&strategy)) {
            const PasaParameters params = pasa_parameters(inst, pasa->config);
            const auto rules = build_pasa_rules(inst, pasa->config);
            const ClusterLabels labels = cluster_customers(inst, pasa->config.levels);
            out_stream << "d=" << params.unit << " mu=" << bench::fixed(params.mean_units, 4)
                       << " s_max=" << params.max_exponent << '\n';
            for (int label = 1; label <= pasa->config.levels; ++label) {
                const auto members = std::count(labels.labels.begin(), labels.labels.end(), label);
                const int index = pasa->config.levels + 1 - label;
                out_stream << "ring " << label << ": " << members << " customers, rule "
                           << rules[static_cast<std::size_t>(index - 1)].to_string() << '\n';
            }
        }
        if (!out.empty()) {
            write_file(out, tsplib::write_instance(expanded.cvrp));
        }
        return kOk;
    }
};

struct SolveCommand {
    std::string instance;
    std::string rule = "pasa";
    std::string out;
    std::string svg;
    SolverFlags solver;

    int run(std::ostream &out_stream, std::ostream &err) const {
        const Strategy strategy = strategy_or_usage(rule);
        const cvrp::SolverConfig cfg = solver.config();
        const Instance inst = load_instance(instance, err);
        const RunResult result = solve_sdvrp(inst, strategy, cfg);
        if (!out.empty()) {
            write_file(out, tsplib::write_solution(result.solution));
        }
        if (!svg.empty()) {
            std::ostringstream drawing;
            bench::emit_route_svg(drawing, inst, result.solution);
            write_file(svg, drawing.str());
        }
        out_stream << "cost=" << bench::fixed(result.cost) << " m=" << result.expanded_size
                   << " time=" << bench::fixed(result.wall_seconds) << "s\n";
        return kOk;
    }
};

struct BenchCommand {
    std::string data;
    std::vector<std::string> generators;
    std::vector<std::string> rules{"none", "coin20", "pasa"};
    std::vector<std::uint64_t> seeds{0};
    int jobs = 1;
    std::string best_known;
    std::string out;
    bool no_timing = false;
    SolverFlags solver;

    static std::vector<fs::path> discover(const fs::path &dir) {
        std::vector<fs::path> files;
        for (const auto &entry : fs::recursive_directory_iterator(dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".vrp") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        return files;
    }

    int run(std::ostream &out_stream, std::ostream &err) const {
        std::vector<Strategy> strategies;
        for (const std::string &r : rules) {
            strategies.push_back(strategy_or_usage(r));
        }
        std::vector<bench::GeneratorSpec> specs;
        for (const std::string &g : generators) {
            try {
                specs.push_back(bench::parse_generator_spec(g));
            } catch (const std::invalid_argument &e) {
                throw Failure(kUsage, e.what());
            }
        }
        if (jobs < 1) {
            throw Failure(kUsage, "--jobs must be at least 1");
        }
        const cvrp::SolverConfig cfg = solver.config();

        // Instance source: --data, then --gen, then $SDVRP_DATA_DIR, then ./data,
        // then a small built-in generated suite.
        fs::path dir;
        if (!data.empty()) {
            if (!fs::is_directory(data)) {
                throw Failure(kUsage, "data directory not found: " + data);
            }
            dir = data;
        } else if (specs.empty()) {
            if (const char *env = std::getenv(kDataEnv); env && *env && fs::is_directory(env)) {
                dir = env;
            } else if (fs::is_directory("data") && !discover("data").empty()) {
                dir = "data";
            }
        }
        std::vector<Instance> instances;
        if (!dir.empty()) {
            for (const fs::path &p : discover(dir)) {
                instances.push_back(load_instance(p.string(), err));
            }
            if (instances.empty()) {
                throw Failure(kUsage, "no .vrp files under " + dir.string());
            }
        } else {
            if (specs.empty()) {
                for (const char *s : {"concentric:n=16,rings=2,seed=1", "random:n=20,a=0.1,b=0.5,q=160,seed=2",
                                      "nopattern:n=20,q=200,seed=3"}) {
                    specs.push_back(bench::parse_generator_spec(s));
                }
            }
            for (const auto &s : specs) {
                instances.push_back(bench::generate(s));
            }
        }

        bench::BestKnownTable table;
        fs::path table_path = best_known;
        if (table_path.empty()) {
            std::vector<fs::path> candidates;
            if (!dir.empty()) {
                candidates.push_back(dir / "best_known.txt");
            }
            candidates.push_back(fs::path("data") / "best_known.txt");
            for (const fs::path &candidate : candidates) {
                if (fs::is_regular_file(candidate)) {
                    table_path = candidate;
                    break;
                }
            }
        } else if (!fs::is_regular_file(table_path)) {
            throw Failure(kUsage, "best-known file not found: " + best_known);
        }
        if (!table_path.empty()) {
            table = bench::read_best_known_file(table_path);
        }

        bench::SuiteOptions options;
        options.seeds = seeds;
        options.jobs = jobs;
        const auto records = bench::run_suite(instances, strategies, cfg, table, options);

        std::ostringstream csv;
        bench::emit_report_csv(csv, records, {.timing = !no_timing});
        if (out.empty()) {
            out_stream << csv.str();
        } else {
            write_file(out, csv.str());
            bench::emit_summary(out_stream, records);
        }
        for (const auto &r : records) {
            if (!r.average && !r.ok()) {
                err << "failed: " << r.instance << " " << r.strategy << ": " << r.status << '\n';
            }
        }
        const bool any_ok =
            std::any_of(records.begin(), records.end(), [](const auto &r) { return !r.average && r.ok(); });
        if (!any_ok) {
            throw Failure(kInfeasible, "no benchmark run succeeded");
        }
        return kOk;
    }
};

struct PlotCommand {
    std::string instance;
    std::string solution;
    std::string out;

    int run(std::ostream &err) const {
        const Instance inst = load_instance(instance, err);
        if (!fs::is_regular_file(solution)) {
            throw Failure(kUsage, "solution file not found: " + solution);
        }
        const Solution sol = tsplib::read_solution_file(solution);
        std::ostringstream drawing;
        try {
            bench::emit_route_svg(drawing, inst, sol);
        } catch (const std::invalid_argument &e) {
            throw Failure(kInfeasible, e.what());
        }
        write_file(out, drawing.str());
        return kOk;
    }
};

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Split delivery vehicle routing by a priori demand splitting", "sdvrp"};
    app.require_subcommand(1);

    GenCommand gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate a benchmark-style instance");
    gen_cmd->add_option("spec", gen.spec, "concentric|random|nopattern[:key=value,...]")->required();
    gen_cmd->add_option("-o,--out", gen.out, "Instance file to write (default: stdout)");

    SplitCommand split;
    auto *split_cmd = app.add_subcommand("split", "Expand an instance into a CVRP instance");
    split_cmd->add_option("-i,--instance", split.instance, "Instance file")->required();
    split_cmd->add_option("-r,--rule", split.rule, "none|coin20|coin25|pasa[:L=,p=]|rule:a/b/...")
        ->capture_default_str();
    split_cmd->add_option("-o,--out", split.out, "CVRP file to write");

    SolveCommand solve;
    auto *solve_cmd = app.add_subcommand("solve", "Solve one instance");
    solve_cmd->add_option("-i,--instance", solve.instance, "Instance file")->required();
    solve_cmd->add_option("-r,--rule", solve.rule, "Splitting strategy")->capture_default_str();
    solve_cmd->add_option("-o,--out", solve.out, "Solution file to write");
    solve_cmd->add_option("--svg", solve.svg, "Route plot to write");
    solve.solver.add_to(*solve_cmd, true);

    BenchCommand bench_args;
    auto *bench_cmd = app.add_subcommand("bench", "Run strategies over a set of instances");
    bench_cmd->add_option("--data", bench_args.data, "Directory searched recursively for .vrp files");
    bench_cmd->add_option("--gen", bench_args.generators, "Generator spec (repeatable)");
    bench_cmd->add_option("-r,--rule", bench_args.rules, "Strategies to compare (repeatable)")
        ->capture_default_str();
    bench_cmd->add_option("--seeds", bench_args.seeds, "Solver seeds, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("-j,--jobs", bench_args.jobs, "Worker threads")->capture_default_str();
    bench_cmd->add_option("--best-known", bench_args.best_known, "Best-known cost table");
    bench_cmd->add_option("-o,--out", bench_args.out, "CSV report to write (default: stdout)");
    bench_cmd->add_flag("--no-timing", bench_args.no_timing, "Leave the time column blank");
    bench_args.solver.add_to(*bench_cmd, false);

    PlotCommand plot;
    auto *plot_cmd = app.add_subcommand("plot", "Draw a solution as SVG");
    plot_cmd->add_option("-i,--instance", plot.instance, "Instance file")->required();
    plot_cmd->add_option("-s,--solution", plot.solution, "Solution file")->required();
    plot_cmd->add_option("-o,--out", plot.out, "SVG file to write")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        if (!args.empty()) {
            err << "run 'sdvrp --help' for usage\n";
        }
        return kUsage;
    }

    try {
        if (gen_cmd->parsed()) {
            return gen.run(out);
        }
        if (split_cmd->parsed()) {
            return split.run(out, err);
        }
        if (solve_cmd->parsed()) {
            return solve.run(out, err);
        }
        if (bench_cmd->parsed()) {
            return bench_args.run(out, err);
        }
        return plot.run(err);
    } catch (const Failure &e) {
        err << "error: " << e.what() << '\n';
        return e.code();
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InfeasibleError &e) {
        err << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const InvariantViolation &e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::ios_base::failure &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace sdvrp::cli

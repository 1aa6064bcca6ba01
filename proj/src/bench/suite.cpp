#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <thread>

#include "sdvrp/bench.hpp"
#include "sdvrp/pipeline.hpp"

namespace sdvrp::bench {

namespace {

// Commas and line breaks would break the CSV layout.
std::string csv_safe(std::string text) {
    std::replace(text.begin(), text.end(), ',', ';');
    std::replace(text.begin(), text.end(), '\n', ' ');
    std::replace(text.begin(), text.end(), '\r', ' ');
    return text;
}

struct Cell {
    std::size_t instance;
    std::size_t strategy;
    std::uint64_t seed;
};

BenchRecord run_cell(const Instance &instance, const Strategy &strategy, std::uint64_t seed,
                     const cvrp::SolverConfig &config, const BestKnownTable &best_known) {
    BenchRecord rec;
    rec.instance = instance.name();
    rec.strategy = to_string(strategy);
    rec.seed = seed;
    rec.best_known = best_known.lookup(instance.name());
    try {
        cvrp::SolverConfig cfg = config;
        cfg.seed = seed;
        const RunResult result = solve_sdvrp(instance, strategy, cfg);
        rec.expanded_size = result.expanded_size;
        rec.cost = result.cost;
        rec.time_s = result.wall_seconds;
        if (rec.best_known) {
            rec.gap_pct = gap(result.cost, *rec.best_known);
        }
    } catch (const std::exception &e) {
        rec.status = e.what();
    }
    return rec;
}

BenchRecord average_row(const std::string &strategy, const std::vector<BenchRecord> &rows) {
    BenchRecord avg;
    avg.instance = "Average";
    avg.strategy = strategy;
    avg.average = true;
    std::size_t ok = 0;
    std::size_t with_gap = 0;
    double gap_sum = 0.0;
    double time_sum = 0.0;
    for (const BenchRecord &r : rows) {
        if (r.strategy != strategy || r.average || !r.ok()) {
            continue;
        }
        ++ok;
        time_sum += r.time_s.value_or(0.0);
        if (r.gap_pct) {
            ++with_gap;
            gap_sum += *r.gap_pct;
        }
    }
    const auto total = static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [&](const BenchRecord &r) { return r.strategy == strategy; }));
    if (ok > 0) {
        avg.time_s = time_sum / static_cast<double>(ok);
    }
    if (with_gap > 0) {
        avg.gap_pct = gap_sum / static_cast<double>(with_gap);
    }
    if (ok != total) {
        avg.status = std::to_string(ok) + " of " + std::to_string(total) + " runs succeeded";
    }
    return avg;
}

}  // namespace

std::string fixed(double value, int digits) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
    if (ec != std::errc{}) {
        return "nan";
    }
    std::string out(buf, ptr);
    // "-0.00" reads oddly in a table.
    if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') {
        out.erase(0, 1);
    }
    return out;
}

std::vector<BenchRecord> run_suite(const std::vector<Instance> &instances, const std::vector<Strategy> &strategies,
                                   const cvrp::SolverConfig &config, const BestKnownTable &best_known,
                                   const SuiteOptions &options) {
    config.validate();
    if (options.seeds.empty()) {
        throw std::invalid_argument("run_suite needs at least one seed");
    }
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (std::size_t s = 0; s < strategies.size(); ++s) {
            for (const std::uint64_t seed : options.seeds) {
                cells.push_back({i, s, seed});
            }
        }
    }
    std::vector<BenchRecord> rows(cells.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < cells.size(); k = next++) {
            const Cell &c = cells[k];
            rows[k] = run_cell(instances[c.instance], strategies[c.strategy], c.seed, config, best_known);
        }
    };
    const int jobs = std::clamp(options.jobs, 1, static_cast<int>(std::max<std::size_t>(cells.size(), 1)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
    }

    for (const Strategy &s : strategies) {
        const std::string label = to_string(s);
        // Repeated strategies share one summary row.
        if (std::none_of(rows.begin(), rows.end(), [&](const BenchRecord &r) { return r.average && r.strategy == label; })) {
            rows.push_back(average_row(label, rows));
        }
    }
    return rows;
}

void emit_report_csv(std::ostream &out, const std::vector<BenchRecord> &records, const CsvOptions &options) {
    out << kCsvHeader << '\n';
    for (const BenchRecord &r : records) {
        out << csv_safe(r.instance) << ',' << csv_safe(r.strategy) << ',';
        if (r.expanded_size) {
            out << *r.expanded_size;
        }
        out << ',';
        if (r.cost) {
            out << fixed(*r.cost);
        }
        out << ',';
        if (r.best_known) {
            out << fixed(*r.best_known);
        }
        out << ',';
        if (r.gap_pct) {
            out << fixed(*r.gap_pct);
        }
        out << ',';
        if (options.timing && r.time_s) {
            out << fixed(*r.time_s);
        }
        out << ',';
        if (r.seed) {
            out << *r.seed;
        }
        out << ',' << csv_safe(r.status) << '\n';
    }
}

void emit_summary(std::ostream &out, const std::vector<BenchRecord> &records) {
    std::size_t width = 8;
    for (const BenchRecord &r : records) {
        width = std::max(width, r.strategy.size());
    }
    out << "strategy" << std::string(width - 8 + 2, ' ') << "gap(%)    time(s)   status\n";
    for (const BenchRecord &r : records) {
        if (!r.average) {
            continue;
        }
        std::string gap_text = r.gap_pct ? fixed(*r.gap_pct) : "-";
        std::string time_text = r.time_s ? fixed(*r.time_s) : "-";
        gap_text.resize(std::max<std::size_t>(gap_text.size(), 10), ' ');
        time_text.resize(std::max<std::size_t>(time_text.size(), 10), ' ');
        out << r.strategy << std::string(width - r.strategy.size() + 2, ' ') << gap_text << time_text << r.status
            << '\n';
    }
}

}  // namespace sdvrp::bench

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdvrp/cvrp.hpp"
#include "sdvrp/model.hpp"
#include "sdvrp/split.hpp"

namespace sdvrp::bench {

// ---------------------------------------------------------------------------
// Best-known costs

class BestKnownTable {
public:
    /// Throws std::invalid_argument on a duplicate name or a non-positive cost.
    void insert(const std::string &name, double cost);
    std::optional<double> lookup(const std::string &name) const;
    std::size_t size() const { return costs_.size(); }
    const std::map<std::string, double> &entries() const { return costs_; }

private:
    std::map<std::string, double> costs_;
};

/// Lines of `<name> <cost>`; blank lines and '#' comments are skipped.
/// Throws ParseError (with line number) on malformed rows, duplicates or
/// non-positive costs.
BestKnownTable load_best_known(std::istream &in);
BestKnownTable load_best_known_text(std::string_view text);
BestKnownTable read_best_known_file(const std::filesystem::path &path);

// ---------------------------------------------------------------------------
// Instance generators

enum class Family { concentric, random_demand, no_pattern };

struct GeneratorSpec {
    Family family = Family::concentric;
    int n = 32;
    Quantity capacity = 100;
    std::uint64_t seed = 0;
    // concentric
    int rings = 2;
    double radius = 10.0;  // ring k has radius k * radius
    // random_demand: demands in [round(aQ), round(bQ)]
    double demand_low = 0.1;
    double demand_high = 0.3;
    // random_demand / no_pattern: coordinates in [0, side]^2, depot at the centre
    double side = 100.0;
    // Instance name; derived from the parameters when empty.
    std::string name;

    /// Throws std::invalid_argument for out-of-range parameters.
    void validate() const;
};

/// The six (a, b) demand ranges used by the random-demand benchmark sets.
const std::vector<std::pair<double, double>> &demand_presets();

/// Customers evenly spaced by angle on `rings` circles around the depot at the
/// origin; demands drawn from {60, 90}.
Instance generate_concentric(const GeneratorSpec &spec);

/// Uniform coordinates in a square; uniform integer demands in
/// [max(1, round(aQ)), round(bQ)].
Instance generate_random_demand(const GeneratorSpec &spec);

/// Every customer draws its own demand range from demand_presets(), so the
/// instance mixes small and large demands with no overall pattern.
Instance generate_no_pattern(const GeneratorSpec &spec);

Instance generate(const GeneratorSpec &spec);

/// "concentric:n=32,rings=2,seed=1", "random:n=50,a=0.1,b=0.3,q=160",
/// "nopattern:n=30,q=200". Keys: n, q, seed, rings, radius, a, b, side, name.
GeneratorSpec parse_generator_spec(std::string_view text);

// ---------------------------------------------------------------------------
// Suite runner and reports

struct BenchRecord {
    std::string instance;  // "Average" on summary rows
    std::string strategy;
    std::optional<int> expanded_size;
    std::optional<double> cost;
    std::optional<double> best_known;
    std::optional<double> gap_pct;
    std::optional<double> time_s;
    std::optional<std::uint64_t> seed;
    std::string status = "ok";  // error text when the run failed
    bool average = false;

    bool ok() const { return status == "ok"; }
};

struct SuiteOptions {
    std::vector<std::uint64_t> seeds{0};
    int jobs = 1;
};

/// Runs every (instance, strategy, seed) cell through solve_sdvrp. Rows come
/// out in instance, strategy, seed order regardless of jobs, followed by one
/// Average row per strategy. Failed cells carry their error in `status`.
std::vector<BenchRecord> run_suite(const std::vector<Instance> &instances, const std::vector<Strategy> &strategies,
                                   const cvrp::SolverConfig &config, const BestKnownTable &best_known,
                                   const SuiteOptions &options = {});

struct CsvOptions {
    /// When false the time_s column is left blank, making the report a pure
    /// function of the inputs and seeds.
    bool timing = true;
};

inline constexpr std::string_view kCsvHeader = "instance,strategy,m,cost,best_known,gap_pct,time_s,seed,status";

void emit_report_csv(std::ostream &out, const std::vector<BenchRecord> &records, const CsvOptions &options = {});

/// Per-strategy average gap and time, one line each, for terminal output.
void emit_summary(std::ostream &out, const std::vector<BenchRecord> &records);

/// SVG 1.1 drawing: depot square, customer dots scaled by demand, one coloured
/// polyline per non-empty route, cost legend. Throws std::invalid_argument if
/// the solution names a customer the instance does not have.
void emit_route_svg(std::ostream &out, const Instance &instance, const Solution &solution);

/// Fixed-point text with `digits` decimals.
std::string fixed(double value, int digits = 2);

}  // namespace sdvrp::bench

#pragma once

#include <cstdint>
#include <string>

#include "sdvrp/cvrp.hpp"
#include "sdvrp/model.hpp"
#include "sdvrp/split.hpp"

namespace sdvrp {

struct RunResult {
    Strategy strategy;
    std::string instance_name;
    int expanded_size = 0;  // m, customers in the CVRP instance
    Solution solution;      // on the original instance
    double cost = 0.0;      // == solution_cost(original, solution)
    double cvrp_cost = 0.0; // solver's cost on the expanded instance
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

/// Maps a CVRP solution on `expanded.cvrp` back to the original customers.
///
/// Within each route, visits to the same original customer are merged into a
/// single visit whenever dropping the other stops does not increase the
/// route cost; otherwise the later stop is kept and flagged as a revisit.
/// Consecutive co-located stops always merge.
Solution project_solution(const ExpandedInstance &expanded, const Solution &cvrp_solution);

/// expand -> cvrp::solve -> project -> validate.
/// Throws InfeasibleError when the strategy cannot be applied, and
/// InvariantViolation if the projected solution fails validation.
RunResult solve_sdvrp(const Instance &instance, const Strategy &strategy, const cvrp::SolverConfig &config);

/// Percentage deviation from a best-known cost; negative for a new best.
double gap(double cost, double best_known);

}  // namespace sdvrp

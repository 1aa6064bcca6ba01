#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sdvrp/model.hpp"

namespace sdvrp::cvrp {

struct SolverConfig {
    std::uint64_t seed = 0;
    /// Record-to-record band: uphill moves are accepted while the resulting
    /// cost stays within record * (1 + deviation). 0 disables the uphill phase.
    double deviation = 0.01;
    /// Stop after this many consecutive iterations without a new record.
    int max_stale_iterations = 50;
    /// Moves only consider each customer's k nearest customers.
    int neighbor_list_size = 25;
    std::optional<double> time_limit_seconds;

    /// Sweeps over all customers per uphill phase.
    int uphill_passes = 5;
    /// After every accepted move, recompute the full cost and throw
    /// std::logic_error if it disagrees with the incremental delta.
    bool check_deltas = false;

    /// Throws std::invalid_argument for out-of-range values.
    void validate() const;
};

struct SearchStats {
    int iterations = 0;
    std::int64_t moves_applied = 0;
    /// Record cost after each iteration; non-increasing.
    std::vector<double> record_history;
    bool hit_time_limit = false;
};

/// Savings construction. Every visit delivers the full demand.
/// Throws InfeasibleError when a demand exceeds the capacity.
Solution clarke_wright_construct(const Instance &instance);

/// First-improvement descent over relocate, swap, 2-opt (intra and
/// inter-route) and Or-opt segments, until no improving move remains.
/// Deterministic; uses no randomness.
Solution local_search_improve(const Instance &instance, const Solution &solution, const SolverConfig &config);

/// Record-to-record travel starting from `initial`; returns the best
/// solution seen.
Solution rtr_search(const Instance &instance, const Solution &initial, const SolverConfig &config,
                    SearchStats *stats = nullptr);

/// clarke_wright_construct followed by rtr_search.
Solution solve(const Instance &instance, const SolverConfig &config, SearchStats *stats = nullptr);

}  // namespace sdvrp::cvrp

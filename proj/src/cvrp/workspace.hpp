#pragma once

#include <functional>
#include <vector>

#include "sdvrp/cvrp.hpp"
#include "sdvrp/model.hpp"
#include "sdvrp/rng.hpp"

namespace sdvrp::cvrp::detail {

class DistanceMatrix {
public:
    explicit DistanceMatrix(const Instance &instance);

    double operator()(NodeId a, NodeId b) const {
        return data_[static_cast<std::size_t>(a) * stride_ + static_cast<std::size_t>(b)];
    }

private:
    std::size_t stride_;
    std::vector<double> data_;
};

/// k nearest customers of every customer, ties broken by id.
std::vector<std::vector<NodeId>> nearest_neighbors(const Instance &instance, const DistanceMatrix &dist, int k);

/// Mutable routing state for local search on a CVRP instance.
///
/// Routes are plain vectors of customer ids; empty routes may linger and are
/// dropped on export. For every customer we track its route, position, and
/// the load of its route prefix up to and including itself.
class Workspace {
public:
    Workspace(const Instance &instance, const Solution &solution, const SolverConfig &config);

    /// Replaces the routes with those of `solution` (must be CVRP-feasible).
    void reset(const Solution &solution);

    double cost() const { return cost_; }
    int size() const { return instance_.size(); }

    Solution to_solution() const;
    double recompute_cost() const;
    void resync_cost() { cost_ = recompute_cost(); }

    /// Scans moves involving `u` and applies the first one whose delta the
    /// predicate accepts. Returns true if a move was applied.
    using Acceptor = std::function<bool(double delta)>;
    bool try_moves(NodeId u, const Acceptor &accept);

    /// Improving moves only, customers in id order, until a full pass finds
    /// nothing. Returns the number of moves applied.
    std::int64_t descend(const std::function<bool()> &out_of_time);

    /// One randomized sweep accepting any non-null move that keeps the cost
    /// within `threshold`. Returns the number of moves applied.
    std::int64_t uphill_pass(double threshold, Rng &rng);

    /// Removes a seed customer and its nearest neighbours, then reinserts
    /// them one by one at their cheapest feasible position.
    void perturb(Rng &rng);

private:
    NodeId prev(NodeId u) const;
    NodeId next(NodeId u) const;
    Quantity demand(NodeId u) const { return demand_[static_cast<std::size_t>(u)]; }
    Quantity prefix(NodeId u) const { return prefix_[static_cast<std::size_t>(u)]; }
    int route_of(NodeId u) const { return route_of_[static_cast<std::size_t>(u)]; }
    int pos_of(NodeId u) const { return pos_of_[static_cast<std::size_t>(u)]; }

    void refresh_route(int r);
    void commit(double delta, const char *what);
    double epsilon() const;

    bool try_segment(NodeId u, NodeId v, int length, const Acceptor &accept);
    bool try_swap(NodeId u, NodeId v, const Acceptor &accept);
    bool try_two_opt(NodeId u, NodeId v, const Acceptor &accept);
    bool try_two_opt_star(NodeId u, NodeId v, const Acceptor &accept);

    void insert_cheapest(NodeId u);

    const Instance &instance_;
    SolverConfig config_;
    DistanceMatrix dist_;
    std::vector<std::vector<NodeId>> neighbors_;
    std::vector<Quantity> demand_;

    std::vector<std::vector<NodeId>> routes_;
    std::vector<Quantity> load_;
    std::vector<int> route_of_;
    std::vector<int> pos_of_;
    std::vector<Quantity> prefix_;
    double cost_ = 0.0;
};

}  // namespace sdvrp::cvrp::detail

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "sdvrp/cvrp.hpp"
#include "sdvrp/errors.hpp"
#include "sdvrp/rng.hpp"
#include "workspace.hpp"

namespace sdvrp::cvrp {

namespace {

// Above this many customers the savings list is restricted to each
// customer's nearest neighbours instead of all pairs.
constexpr int kFullSavingsLimit = 1500;
constexpr int kSavingsNeighbors = 100;

void require_servable(const Instance &instance) {
    for (const auto &c : instance.customers()) {
        if (c.demand > instance.capacity()) {
            throw InfeasibleError("customer " + std::to_string(c.id) + " demand " + std::to_string(c.demand) +
                                  " exceeds vehicle capacity " + std::to_string(instance.capacity()));
        }
    }
}

class Clock {
public:
    explicit Clock(std::optional<double> limit) : limit_(limit), start_(std::chrono::steady_clock::now()) {}

    bool expired() const {
        if (!limit_) {
            return false;
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
        return elapsed.count() >= *limit_;
    }

private:
    std::optional<double> limit_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

void SolverConfig::validate() const {
    if (!(deviation >= 0.0 && deviation <= 0.2)) {
        throw std::invalid_argument("deviation must lie in [0, 0.2]");
    }
    if (max_stale_iterations < 1) {
        throw std::invalid_argument("max_stale_iterations must be positive");
    }
    if (neighbor_list_size < 1) {
        throw std::invalid_argument("neighbor_list_size must be positive");
    }
    if (time_limit_seconds && !(*time_limit_seconds > 0.0)) {
        throw std::invalid_argument("time limit must be positive");
    }
    if (uphill_passes < 0) {
        throw std::invalid_argument("uphill_passes must be non-negative");
    }
}

Solution clarke_wright_construct(const Instance &instance) {
    require_servable(instance);
    const int m = instance.size();
    const detail::DistanceMatrix dist(instance);

    struct Saving {
        NodeId i;
        NodeId j;
        double value;
    };
    std::vector<Saving> savings;
    auto add_saving = [&](NodeId i, NodeId j) {
        const double s = dist(i, kDepot) + dist(kDepot, j) - dist(i, j);
        if (s > 0.0) {
            savings.push_back({i, j, s});
        }
    };
    if (m <= kFullSavingsLimit) {
        savings.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(std::max(m - 1, 0)) / 2);
        for (NodeId i = 1; i <= m; ++i) {
            for (NodeId j = i + 1; j <= m; ++j) {
                add_saving(i, j);
            }
        }
    } else {
        const auto near = detail::nearest_neighbors(instance, dist, kSavingsNeighbors);
        for (NodeId i = 1; i <= m; ++i) {
            for (const NodeId j : near[static_cast<std::size_t>(i)]) {
                const bool listed_by_j = std::find(near[static_cast<std::size_t>(j)].begin(),
                                                   near[static_cast<std::size_t>(j)].end(),
                                                   i) != near[static_cast<std::size_t>(j)].end();
                if (i < j || !listed_by_j) {
                    add_saving(std::min(i, j), std::max(i, j));
                }
            }
        }
    }
    std::sort(savings.begin(), savings.end(), [](const Saving &a, const Saving &b) {
        if (a.value != b.value) {
            return a.value > b.value;
        }
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    std::vector<std::vector<NodeId>> routes(static_cast<std::size_t>(m));
    std::vector<Quantity> load(static_cast<std::size_t>(m));
    std::vector<int> route_of(static_cast<std::size_t>(m) + 1);
    for (NodeId u = 1; u <= m; ++u) {
        routes[static_cast<std::size_t>(u - 1)] = {u};
        load[static_cast<std::size_t>(u - 1)] = instance.customer(u).demand;
        route_of[static_cast<std::size_t>(u)] = u - 1;
    }

    for (const Saving &s : savings) {
        const int ri = route_of[static_cast<std::size_t>(s.i)];
        const int rj = route_of[static_cast<std::size_t>(s.j)];
        if (ri == rj) {
            continue;
        }
        auto &a = routes[static_cast<std::size_t>(ri)];
        auto &b = routes[static_cast<std::size_t>(rj)];
        if (load[static_cast<std::size_t>(ri)] + load[static_cast<std::size_t>(rj)] > instance.capacity()) {
            continue;
        }
        const bool i_end = a.front() == s.i || a.back() == s.i;
        const bool j_end = b.front() == s.j || b.back() == s.j;
        if (!i_end || !j_end) {
            continue;
        }
        // Orient a to end with i and b to start with j, then join.
        if (a.back() != s.i) {
            std::reverse(a.begin(), a.end());
        }
        if (b.front() != s.j) {
            std::reverse(b.begin(), b.end());
        }
        for (const NodeId u : b) {
            route_of[static_cast<std::size_t>(u)] = ri;
        }
        a.insert(a.end(), b.begin(), b.end());
        b.clear();
        load[static_cast<std::size_t>(ri)] += load[static_cast<std::size_t>(rj)];
        load[static_cast<std::size_t>(rj)] = 0;
    }

    Solution out;
    for (const auto &nodes : routes) {
        if (nodes.empty()) {
            continue;
        }
        Route route;
        for (const NodeId u : nodes) {
            route.visits.push_back({u, instance.customer(u).demand, false});
        }
        out.routes.push_back(std::move(route));
    }
    out.cost = solution_cost(instance, out);
    return out;
}

Solution local_search_improve(const Instance &instance, const Solution &solution, const SolverConfig &config) {
    config.validate();
    detail::Workspace work(instance, solution, config);
    const double before = work.cost();
    if (work.descend({}) == 0) {
        // Nothing applied: hand back the input untouched.
        Solution same = solution;
        same.cost = solution_cost(instance, same);
        std::erase_if(same.routes, [](const Route &r) { return r.empty(); });
        return same;
    }
    Solution out = work.to_solution();
    if (out.cost > before) {
        throw std::logic_error("local search increased the cost");
    }
    return out;
}

Solution rtr_search(const Instance &instance, const Solution &initial, const SolverConfig &config,
                    SearchStats *stats) {
    config.validate();
    const Clock clock(config.time_limit_seconds);
    Rng rng(config.seed);
    detail::Workspace work(instance, initial, config);

    SearchStats local;
    SearchStats &st = stats ? *stats : local;
    st = SearchStats{};

    Solution best = work.to_solution();
    double record = best.cost;
    int stale = 0;
    const auto out_of_time = [&clock] { return clock.expired(); };

    while (true) {
        if (clock.expired()) {
            st.hit_time_limit = true;
            break;
        }
        if (config.deviation > 0.0) {
            for (int pass = 0; pass < config.uphill_passes && !clock.expired(); ++pass) {
                st.moves_applied += work.uphill_pass(record * (1.0 + config.deviation), rng);
            }
        }
        st.moves_applied += work.descend(out_of_time);
        ++st.iterations;

        if (work.cost() < record - 1e-10 * std::max(1.0, record)) {
            best = work.to_solution();
            record = best.cost;
            stale = 0;
        } else {
            ++stale;
        }
        st.record_history.push_back(record);
        if (stale >= config.max_stale_iterations) {
            break;
        }
        if (stale > 0) {
            // Drifted too far above the record: restart the kick from the record.
            if (work.cost() > record * (1.0 + config.deviation)) {
                work.reset(best);
            }
            work.perturb(rng);
        }
    }
    return best;
}

Solution solve(const Instance &instance, const SolverConfig &config, SearchStats *stats) {
    config.validate();
    require_servable(instance);
    if (instance.size() == 0) {
        return Solution{};
    }
    return rtr_search(instance, clarke_wright_construct(instance), config, stats);
}

}  // namespace sdvrp::cvrp

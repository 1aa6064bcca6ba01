#include "sdvrp/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <unordered_map>

#include "sdvrp/errors.hpp"

namespace sdvrp {

namespace {

void merge_adjacent(std::vector<Visit> &visits) {
    std::vector<Visit> out;
    out.reserve(visits.size());
    for (const Visit &v : visits) {
        if (!out.empty() && out.back().customer == v.customer) {
            out.back().quantity += v.quantity;
        } else {
            out.push_back(v);
        }
    }
    visits = std::move(out);
}

// Collapses every occurrence of `customer` into the one at position `keep`.
std::vector<Visit> collapse(const std::vector<Visit> &visits, NodeId customer, std::size_t keep) {
    Quantity total = 0;
    for (const Visit &v : visits) {
        if (v.customer == customer) {
            total += v.quantity;
        }
    }
    std::vector<Visit> out;
    out.reserve(visits.size());
    for (std::size_t i = 0; i < visits.size(); ++i) {
        if (visits[i].customer != customer) {
            out.push_back(visits[i]);
        } else if (i == keep) {
            out.push_back({customer, total, false});
        }
    }
    merge_adjacent(out);
    return out;
}

Route project_route(const ExpandedInstance &expanded, const Route &cvrp_route) {
    const Instance &original = expanded.original;
    Route route;
    for (const Visit &v : cvrp_route.visits) {
        route.visits.push_back({expanded.origin_of(v.customer), v.quantity, false});
    }
    merge_adjacent(route.visits);

    // Customers whose split stops we decided to keep apart.
    std::vector<NodeId> kept_apart;
    while (true) {
        std::unordered_map<NodeId, int> seen;
        NodeId repeated = 0;
        for (const Visit &v : route.visits) {
            if (++seen[v.customer] == 2 &&
                std::find(kept_apart.begin(), kept_apart.end(), v.customer) == kept_apart.end()) {
                repeated = v.customer;
                break;
            }
        }
        if (repeated == 0) {
            break;
        }
        const double current = route_cost(original, route);
        double best_cost = 0.0;
        std::vector<Visit> best;
        for (std::size_t i = 0; i < route.visits.size(); ++i) {
            if (route.visits[i].customer != repeated) {
                continue;
            }
            Route candidate{collapse(route.visits, repeated, i)};
            const double c = route_cost(original, candidate);
            if (best.empty() || c < best_cost) {
                best_cost = c;
                best = std::move(candidate.visits);
            }
        }
        if (best_cost <= current) {
            route.visits = std::move(best);
        } else {
            kept_apart.push_back(repeated);
        }
    }

    std::unordered_map<NodeId, int> seen;
    for (Visit &v : route.visits) {
        v.revisit = ++seen[v.customer] > 1;
    }
    return route;
}

}  // namespace

Solution project_solution(const ExpandedInstance &expanded, const Solution &cvrp_solution) {
    Solution out;
    for (const Route &r : cvrp_solution.routes) {
        if (r.empty()) {
            continue;
        }
        for (const Visit &v : r.visits) {
            if (!expanded.cvrp.contains(v.customer)) {
                throw std::invalid_argument("expanded customer " + std::to_string(v.customer) + " does not exist");
            }
        }
        out.routes.push_back(project_route(expanded, r));
    }
    out.cost = solution_cost(expanded.original, out);
    return out;
}

RunResult solve_sdvrp(const Instance &instance, const Strategy &strategy, const cvrp::SolverConfig &config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    const ExpandedInstance expanded = expand(instance, strategy);
    const Solution cvrp_solution = cvrp::solve(expanded.cvrp, config);
    Solution projected = project_solution(expanded, cvrp_solution);

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    const ValidationReport cvrp_report = validate_solution(expanded.cvrp, cvrp_solution, ValidationMode::cvrp);
    if (!cvrp_report.ok()) {
        throw InvariantViolation("solver returned an infeasible CVRP solution on " + instance.name() + ": " +
                                 cvrp_report.summary());
    }
    const ValidationReport report = validate_solution(instance, projected, ValidationMode::sdvrp);
    if (!report.ok()) {
        throw InvariantViolation("projected solution on " + instance.name() + " is invalid: " + report.summary());
    }
    if (projected.cost > cvrp_solution.cost * (1.0 + 1e-9) + 1e-12) {
        throw InvariantViolation("projection increased the cost on " + instance.name());
    }

    RunResult result;
    result.strategy = strategy;
    result.instance_name = instance.name();
    result.expanded_size = expanded.expanded_size();
    result.cost = projected.cost;
    result.cvrp_cost = cvrp_solution.cost;
    result.solution = std::move(projected);
    result.wall_seconds = elapsed.count();
    result.seed = config.seed;
    return result;
}

double gap(double cost, double best_known) {
    if (!(best_known > 0.0)) {
        throw std::invalid_argument("best-known cost must be positive");
    }
    return (cost - best_known) / best_known * 100.0;
}

}  // namespace sdvrp

#include "brute_force.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

namespace sdvrp::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> all_tsp_costs(const Instance &instance) {
    const int n = instance.size();
    const unsigned full = 1u << n;
    // dp[mask][j]: shortest path from the depot through `mask`, ending at customer j+1 (j in mask)
    std::vector<std::vector<double>> dp(full, std::vector<double>(static_cast<std::size_t>(n), kInf));
    for (int j = 0; j < n; ++j) {
        dp[1u << j][static_cast<std::size_t>(j)] = instance.distance(kDepot, j + 1);
    }
    for (unsigned mask = 1; mask < full; ++mask) {
        for (int j = 0; j < n; ++j) {
            const double here = dp[mask][static_cast<std::size_t>(j)];
            if (!(mask & (1u << j)) || here == kInf) {
                continue;
            }
            for (int k = 0; k < n; ++k) {
                if (mask & (1u << k)) {
                    continue;
                }
                double &there = dp[mask | (1u << k)][static_cast<std::size_t>(k)];
                there = std::min(there, here + instance.distance(j + 1, k + 1));
            }
        }
    }
    std::vector<double> tour(full, 0.0);
    for (unsigned mask = 1; mask < full; ++mask) {
        double best = kInf;
        for (int j = 0; j < n; ++j) {
            if (mask & (1u << j)) {
                best = std::min(best, dp[mask][static_cast<std::size_t>(j)] + instance.distance(j + 1, kDepot));
            }
        }
        tour[mask] = best;
    }
    return tour;
}

}  // namespace

double tsp_cost(const Instance &instance, unsigned mask) {
    if (instance.size() > 12) {
        throw std::invalid_argument("tsp oracle limited to 12 customers");
    }
    return all_tsp_costs(instance).at(mask);
}

double cvrp_optimum(const Instance &instance) {
    const int n = instance.size();
    if (n > 10) {
        throw std::invalid_argument("cvrp oracle limited to 10 customers");
    }
    const unsigned full = 1u << n;
    const std::vector<double> tour = all_tsp_costs(instance);
    std::vector<Quantity> load(full, 0);
    for (unsigned mask = 1; mask < full; ++mask) {
        const int low = std::countr_zero(mask);
        load[mask] = load[mask & (mask - 1)] + instance.customer(low + 1).demand;
    }
    std::vector<double> best(full, kInf);
    best[0] = 0.0;
    for (unsigned mask = 1; mask < full; ++mask) {
        // The route holding the lowest customer of `mask` is enumerated as a
        // submask containing it, so each partition is counted once.
        const unsigned low = mask & (~mask + 1);
        const unsigned rest = mask ^ low;
        for (unsigned sub = rest;; sub = (sub - 1) & rest) {
            const unsigned route = sub | low;
            if (load[route] <= instance.capacity()) {
                best[mask] = std::min(best[mask], tour[route] + best[mask ^ route]);
            }
            if (sub == 0) {
                break;
            }
        }
    }
    if (best[full - 1] == kInf) {
        throw std::invalid_argument("cvrp oracle: some demand exceeds capacity");
    }
    return best[full - 1];
}

double sdvrp_optimum(const Instance &instance, Quantity unit) {
    const int n = instance.size();
    if (n > 6 || unit <= 0 || instance.capacity() % unit != 0) {
        throw std::invalid_argument("sdvrp oracle: unsupported instance");
    }
    std::vector<int> units(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Quantity d = instance.customer(i + 1).demand;
        if (d % unit != 0) {
            throw std::invalid_argument("sdvrp oracle: unit does not divide a demand");
        }
        units[static_cast<std::size_t>(i)] = static_cast<int>(d / unit);
    }
    const int per_vehicle = static_cast<int>(instance.capacity() / unit);
    const std::vector<double> tour = all_tsp_costs(instance);

    std::map<std::vector<int>, double> memo;
    std::function<double(const std::vector<int> &)> solve = [&](const std::vector<int> &left) -> double {
        if (std::all_of(left.begin(), left.end(), [](int r) { return r == 0; })) {
            return 0.0;
        }
        if (const auto it = memo.find(left); it != memo.end()) {
            return it->second;
        }
        // The first customer still owed goods must be on some route; fixing it
        // in every candidate route avoids enumerating route orders.
        int first = 0;
        while (left[static_cast<std::size_t>(first)] == 0) {
            ++first;
        }
        double best = kInf;
        unsigned open = 0;
        for (int i = 0; i < n; ++i) {
            if (left[static_cast<std::size_t>(i)] > 0) {
                open |= 1u << i;
            }
        }
        const unsigned must = 1u << first;
        const unsigned rest = open ^ must;
        for (unsigned sub = rest;; sub = (sub - 1) & rest) {
            const unsigned route = sub | must;
            std::vector<int> members;
            for (int i = 0; i < n; ++i) {
                if (route & (1u << i)) {
                    members.push_back(i);
                }
            }
            if (static_cast<int>(members.size()) <= per_vehicle) {
                // Every delivery vector with x_i in 1..left_i and sum <= capacity.
                std::vector<int> x(members.size(), 1);
                std::vector<int> next = left;
                while (true) {
                    int sum = 0;
                    for (const int v : x) {
                        sum += v;
                    }
                    if (sum <= per_vehicle) {
                        for (std::size_t k = 0; k < members.size(); ++k) {
                            next[static_cast<std::size_t>(members[k])] =
                                left[static_cast<std::size_t>(members[k])] - x[k];
                        }
                        best = std::min(best, tour[route] + solve(next));
                    }
                    std::size_t k = 0;
                    while (k < x.size() && x[k] == left[static_cast<std::size_t>(members[k])]) {
                        x[k] = 1;
                        ++k;
                    }
                    if (k == x.size()) {
                        break;
                    }
                    ++x[k];
                }
            }
            if (sub == 0) {
                break;
            }
        }
        memo[left] = best;
        return best;
    };
    return solve(units);
}

}  // namespace sdvrp::oracle

#pragma once

// Exhaustive reference solvers for tiny instances. They share no code with
// the heuristics under test beyond the Instance type and its distance().

#include "sdvrp/model.hpp"

namespace sdvrp::oracle {

/// Shortest closed tour depot -> every customer in `mask` -> depot, where
/// bit i - 1 stands for customer i. Held-Karp; n <= 12.
double tsp_cost(const Instance &instance, unsigned mask);

/// Exact CVRP optimum: best partition of the customers into capacity-feasible
/// routes, each routed by tsp_cost. Every demand must be <= Q; n <= 10.
double cvrp_optimum(const Instance &instance);

/// Exact SDVRP optimum when all deliveries are multiples of `unit` (which must
/// divide Q and every demand). Enumerates every route as a customer subset
/// with per-customer delivery counts. Intended for n <= 4 and small demands.
double sdvrp_optimum(const Instance &instance, Quantity unit);

}  // namespace sdvrp::oracle

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sdvrp {

/// Node id convention used throughout: 0 is the depot, 1..n are customers.
using NodeId = int;
inline constexpr NodeId kDepot = 0;

/// Units of goods. Demands and capacities are integral.
using Quantity = std::int64_t;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point &, const Point &) = default;
};

double euclidean(const Point &a, const Point &b);

struct Customer {
    NodeId id = 0;
    Point coord;
    Quantity demand = 0;

    friend bool operator==(const Customer &, const Customer &) = default;
};

/// Depot, customers and vehicle capacity. Immutable once constructed.
///
/// Customers are stored by id so that customer(i) is O(1). Demands may
/// exceed the capacity; strategies that cannot cope with that reject the
/// instance themselves.
class Instance {
public:
    Instance() = default;

    /// Throws std::invalid_argument unless ids are exactly 1..n (any order),
    /// every demand is positive, and capacity is positive.
    Instance(std::string name, Point depot, std::vector<Customer> customers, Quantity capacity);

    const std::string &name() const { return name_; }
    const Point &depot() const { return depot_; }
    Quantity capacity() const { return capacity_; }
    int size() const { return static_cast<int>(customers_.size()); }
    const std::vector<Customer> &customers() const { return customers_; }

    const Customer &customer(NodeId id) const;
    bool contains(NodeId id) const { return id >= 1 && id <= size(); }

    /// Coordinates of the depot (id 0) or a customer.
    const Point &location(NodeId id) const;

    /// Exact Euclidean distance between two nodes (depot = 0).
    /// Throws std::invalid_argument for ids outside 0..n.
    double distance(NodeId a, NodeId b) const;

    Quantity total_demand() const;

    friend bool operator==(const Instance &, const Instance &) = default;

private:
    std::string name_;
    Point depot_;
    std::vector<Customer> customers_;
    Quantity capacity_ = 0;
};

struct Visit {
    NodeId customer = 0;
    Quantity quantity = 0;
    // Set when the route already delivered to this customer earlier and the
    // two stops were deliberately kept apart (see project_solution).
    bool revisit = false;

    friend bool operator==(const Visit &, const Visit &) = default;
};

/// Depot at both ends is implicit.
struct Route {
    std::vector<Visit> visits;

    Quantity load() const;
    bool empty() const { return visits.empty(); }

    friend bool operator==(const Route &, const Route &) = default;
};

struct Solution {
    std::vector<Route> routes;
    double cost = 0.0;

    friend bool operator==(const Solution &, const Solution &) = default;
};

double route_cost(const Instance &instance, const Route &route);

/// Sum over routes of depot -> visits -> depot leg lengths. Empty routes cost 0.
double solution_cost(const Instance &instance, const Solution &solution);

/// Relative comparison used for all cost checks.
bool costs_equal(double a, double b, double rel_tol = 1e-9);

enum class ValidationMode { cvrp, sdvrp };

struct Violation {
    enum class Kind {
        unknown_customer,
        nonpositive_quantity,
        capacity_exceeded,
        under_delivered,
        over_delivered,
        repeated_in_route,
        visited_more_than_once,
        cost_mismatch,
    };

    Kind kind;
    int route = -1;       // route index, or -1 when not route-specific
    NodeId customer = 0;  // 0 when not customer-specific
    double amount = 0.0;  // excess, shortfall, or cost difference
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::size_t count(Violation::Kind kind) const;
    std::string summary() const;
};

/// Lists every violated invariant; never throws on bad data.
///
/// Both modes check loads, delivered totals, ids, quantities and the stored
/// cost. sdvrp mode rejects a repeated customer inside one route unless the
/// later visit carries the revisit flag; cvrp mode rejects any customer seen
/// more than once in the whole solution.
ValidationReport validate_solution(const Instance &instance, const Solution &solution, ValidationMode mode);

const char *to_string(Violation::Kind kind);

}  // namespace sdvrp

#include "sdvrp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdvrp {

double euclidean(const Point &a, const Point &b) { return std::hypot(a.x - b.x, a.y - b.y); }

Instance::Instance(std::string name, Point depot, std::vector<Customer> customers, Quantity capacity)
    : name_(std::move(name)), depot_(depot), customers_(std::move(customers)), capacity_(capacity) {
    if (capacity_ <= 0) {
        throw std::invalid_argument("capacity must be positive");
    }
    std::sort(customers_.begin(), customers_.end(),
              [](const Customer &a, const Customer &b) { return a.id < b.id; });
    for (std::size_t i = 0; i < customers_.size(); ++i) {
        const Customer &c = customers_[i];
        if (c.id != static_cast<NodeId>(i + 1)) {
            throw std::invalid_argument("customer ids must be distinct and form 1..n (offending id " +
                                        std::to_string(c.id) + ")");
        }
        if (c.demand <= 0) {
            throw std::invalid_argument("customer " + std::to_string(c.id) + " has non-positive demand");
        }
    }
}

const Customer &Instance::customer(NodeId id) const {
    if (!contains(id)) {
        throw std::invalid_argument("unknown customer id " + std::to_string(id));
    }
    return customers_[static_cast<std::size_t>(id - 1)];
}

const Point &Instance::location(NodeId id) const {
    if (id == kDepot) {
        return depot_;
    }
    return customer(id).coord;
}

double Instance::distance(NodeId a, NodeId b) const {
    if (a == b) {
        if (a != kDepot && !contains(a)) {
            throw std::invalid_argument("unknown node id " + std::to_string(a));
        }
        return 0.0;
    }
    return euclidean(location(a), location(b));
}

Quantity Instance::total_demand() const {
    Quantity total = 0;
    for (const auto &c : customers_) {
        total += c.demand;
    }
    return total;
}

Quantity Route::load() const {
    Quantity total = 0;
    for (const auto &v : visits) {
        total += v.quantity;
    }
    return total;
}

double route_cost(const Instance &instance, const Route &route) {
    double cost = 0.0;
    NodeId prev = kDepot;
    for (const auto &v : route.visits) {
        cost += instance.distance(prev, v.customer);
        prev = v.customer;
    }
    if (prev != kDepot) {
        cost += instance.distance(prev, kDepot);
    }
    return cost;
}

double solution_cost(const Instance &instance, const Solution &solution) {
    double cost = 0.0;
    for (const auto &route : solution.routes) {
        cost += route_cost(instance, route);
    }
    return cost;
}

bool costs_equal(double a, double b, double rel_tol) {
    return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::size_t ValidationReport::count(Violation::Kind kind) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [kind](const Violation &v) { return v.kind == kind; }));
}

std::string ValidationReport::summary() const {
    if (ok()) {
        return "ok";
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i > 0) {
            out << "; ";
        }
        out << violations[i].message;
    }
    return out.str();
}

const char *to_string(Violation::Kind kind) {
    switch (kind) {
    case Violation::Kind::unknown_customer: return "unknown_customer";
    case Violation::Kind::nonpositive_quantity: return "nonpositive_quantity";
    case Violation::Kind::capacity_exceeded: return "capacity_exceeded";
    case Violation::Kind::under_delivered: return "under_delivered";
    case Violation::Kind::over_delivered: return "over_delivered";
    case Violation::Kind::repeated_in_route: return "repeated_in_route";
    case Violation::Kind::visited_more_than_once: return "visited_more_than_once";
    case Violation::Kind::cost_mismatch: return "cost_mismatch";
    }
    return "?";
}

ValidationReport validate_solution(const Instance &instance, const Solution &solution, ValidationMode mode) {
    ValidationReport report;
    auto add = [&report](Violation::Kind kind, int route, NodeId customer, double amount, std::string message) {
        report.violations.push_back({kind, route, customer, amount, std::move(message)});
    };

    const auto n = static_cast<std::size_t>(instance.size());
    std::vector<Quantity> delivered(n + 1, 0);
    std::vector<int> visits_seen(n + 1, 0);
    bool ids_ok = true;

    for (std::size_t r = 0; r < solution.routes.size(); ++r) {
        const int ri = static_cast<int>(r);
        const Route &route = solution.routes[r];
        std::vector<char> in_route(n + 1, 0);
        Quantity load = 0;
        for (const Visit &v : route.visits) {
            if (!instance.contains(v.customer)) {
                ids_ok = false;
                add(Violation::Kind::unknown_customer, ri, v.customer, 0.0,
                    "route " + std::to_string(r) + " references unknown customer " + std::to_string(v.customer));
                continue;
            }
            const auto c = static_cast<std::size_t>(v.customer);
            if (v.quantity <= 0) {
                add(Violation::Kind::nonpositive_quantity, ri, v.customer, static_cast<double>(v.quantity),
                    "route " + std::to_string(r) + " delivers " + std::to_string(v.quantity) + " to customer " +
                        std::to_string(v.customer));
            }
            if (in_route[c] != 0 && (mode == ValidationMode::cvrp || !v.revisit)) {
                add(Violation::Kind::repeated_in_route, ri, v.customer, 0.0,
                    "route " + std::to_string(r) + " visits customer " + std::to_string(v.customer) +
                        " more than once");
            }
            in_route[c] = 1;
            ++visits_seen[c];
            delivered[c] += v.quantity;
            load += v.quantity;
        }
        if (load > instance.capacity()) {
            add(Violation::Kind::capacity_exceeded, ri, 0, static_cast<double>(load - instance.capacity()),
                "route " + std::to_string(r) + " load " + std::to_string(load) + " exceeds capacity " +
                    std::to_string(instance.capacity()));
        }
    }

    for (const Customer &c : instance.customers()) {
        const auto i = static_cast<std::size_t>(c.id);
        if (delivered[i] < c.demand) {
            add(Violation::Kind::under_delivered, -1, c.id, static_cast<double>(c.demand - delivered[i]),
                "customer " + std::to_string(c.id) + " short by " + std::to_string(c.demand - delivered[i]));
        } else if (delivered[i] > c.demand) {
            add(Violation::Kind::over_delivered, -1, c.id, static_cast<double>(delivered[i] - c.demand),
                "customer " + std::to_string(c.id) + " over-served by " + std::to_string(delivered[i] - c.demand));
        }
        if (mode == ValidationMode::cvrp && visits_seen[i] > 1) {
            add(Violation::Kind::visited_more_than_once, -1, c.id, static_cast<double>(visits_seen[i]),
                "customer " + std::to_string(c.id) + " visited " + std::to_string(visits_seen[i]) + " times");
        }
    }

    if (ids_ok) {
        const double actual = solution_cost(instance, solution);
        if (!costs_equal(actual, solution.cost)) {
            add(Violation::Kind::cost_mismatch, -1, 0, solution.cost - actual,
                "stored cost " + std::to_string(solution.cost) + " differs from recomputed " +
                    std::to_string(actual));
        }
    }
    return report;
}

}  // namespace sdvrp

#include "workspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sdvrp::cvrp::detail {

DistanceMatrix::DistanceMatrix(const Instance &instance)
    : stride_(static_cast<std::size_t>(instance.size()) + 1), data_(stride_ * stride_, 0.0) {
    for (std::size_t a = 0; a < stride_; ++a) {
        for (std::size_t b = a + 1; b < stride_; ++b) {
            const double d = instance.distance(static_cast<NodeId>(a), static_cast<NodeId>(b));
            data_[a * stride_ + b] = d;
            data_[b * stride_ + a] = d;
        }
    }
}

std::vector<std::vector<NodeId>> nearest_neighbors(const Instance &instance, const DistanceMatrix &dist, int k) {
    const int m = instance.size();
    const auto keep = static_cast<std::size_t>(std::clamp(k, 0, std::max(m - 1, 0)));
    std::vector<std::vector<NodeId>> out(static_cast<std::size_t>(m) + 1);
    std::vector<NodeId> others;
    others.reserve(static_cast<std::size_t>(m));
    for (NodeId u = 1; u <= m; ++u) {
        others.clear();
        for (NodeId v = 1; v <= m; ++v) {
            if (v != u) {
                others.push_back(v);
            }
        }
        auto closer = [&](NodeId a, NodeId b) {
            const double da = dist(u, a);
            const double db = dist(u, b);
            return da < db || (da == db && a < b);
        };
        std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(keep), others.end(), closer);
        out[static_cast<std::size_t>(u)].assign(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(keep));
    }
    return out;
}

Workspace::Workspace(const Instance &instance, const Solution &solution, const SolverConfig &config)
    : instance_(instance),
      config_(config),
      dist_(instance),
      neighbors_(nearest_neighbors(instance, dist_, config.neighbor_list_size)) {
    const auto slots = static_cast<std::size_t>(instance.size()) + 1;
    demand_.assign(slots, 0);
    for (const auto &c : instance.customers()) {
        demand_[static_cast<std::size_t>(c.id)] = c.demand;
    }
    reset(solution);
}

void Workspace::reset(const Solution &solution) {
    const auto report = validate_solution(instance_, solution, ValidationMode::cvrp);
    for (const auto &v : report.violations) {
        if (v.kind != Violation::Kind::cost_mismatch) {
            throw std::invalid_argument("local search needs a feasible CVRP solution: " + report.summary());
        }
    }

    const auto slots = static_cast<std::size_t>(instance_.size()) + 1;
    route_of_.assign(slots, -1);
    pos_of_.assign(slots, -1);
    prefix_.assign(slots, 0);

    routes_.clear();
    for (const auto &route : solution.routes) {
        if (route.empty()) {
            continue;
        }
        std::vector<NodeId> nodes;
        nodes.reserve(route.visits.size());
        for (const auto &visit : route.visits) {
            nodes.push_back(visit.customer);
        }
        routes_.push_back(std::move(nodes));
    }
    load_.assign(routes_.size(), 0);
    for (std::size_t r = 0; r < routes_.size(); ++r) {
        refresh_route(static_cast<int>(r));
    }
    cost_ = recompute_cost();
}

Solution Workspace::to_solution() const {
    Solution out;
    for (const auto &nodes : routes_) {
        if (nodes.empty()) {
            continue;
        }
        Route route;
        route.visits.reserve(nodes.size());
        for (const NodeId u : nodes) {
            route.visits.push_back({u, demand(u), false});
        }
        out.routes.push_back(std::move(route));
    }
    out.cost = solution_cost(instance_, out);
    return out;
}

double Workspace::recompute_cost() const {
    double total = 0.0;
    for (const auto &nodes : routes_) {
        NodeId last = kDepot;
        for (const NodeId u : nodes) {
            total += dist_(last, u);
            last = u;
        }
        total += dist_(last, kDepot);
    }
    return total;
}

NodeId Workspace::prev(NodeId u) const {
    const int p = pos_of(u);
    return p > 0 ? routes_[static_cast<std::size_t>(route_of(u))][static_cast<std::size_t>(p - 1)] : kDepot;
}

NodeId Workspace::next(NodeId u) const {
    const auto &nodes = routes_[static_cast<std::size_t>(route_of(u))];
    const auto p = static_cast<std::size_t>(pos_of(u)) + 1;
    return p < nodes.size() ? nodes[p] : kDepot;
}

void Workspace::refresh_route(int r) {
    const auto &nodes = routes_[static_cast<std::size_t>(r)];
    Quantity acc = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto u = static_cast<std::size_t>(nodes[k]);
        route_of_[u] = r;
        pos_of_[u] = static_cast<int>(k);
        acc += demand_[u];
        prefix_[u] = acc;
    }
    load_[static_cast<std::size_t>(r)] = acc;
}

double Workspace::epsilon() const { return 1e-10 * std::max(1.0, cost_); }

void Workspace::commit(double delta, const char *what) {
    cost_ += delta;
    if (config_.check_deltas) {
        const double actual = recompute_cost();
        if (!costs_equal(actual, cost_)) {
            throw std::logic_error(std::string(what) + " move delta mismatch: tracked " + std::to_string(cost_) +
                                   ", recomputed " + std::to_string(actual));
        }
        cost_ = actual;
    }
}

bool Workspace::try_moves(NodeId u, const Acceptor &accept) {
    for (const NodeId v : neighbors_[static_cast<std::size_t>(u)]) {
        if (try_segment(u, v, 1, accept) || try_swap(u, v, accept)) {
            return true;
        }
        if (route_of(u) == route_of(v) ? try_two_opt(u, v, accept) : try_two_opt_star(u, v, accept)) {
            return true;
        }
        if (try_segment(u, v, 2, accept) || try_segment(u, v, 3, accept)) {
            return true;
        }
    }
    return false;
}

// Moves the segment of `length` customers starting at u so that it sits
// next to v (after or before it), optionally reversed.
bool Workspace::try_segment(NodeId u, NodeId v, int length, const Acceptor &accept) {
    const int a = route_of(u);
    const int b = route_of(v);
    const int i = pos_of(u);
    auto &ra = routes_[static_cast<std::size_t>(a)];
    if (static_cast<std::size_t>(i + length) > ra.size()) {
        return false;
    }
    if (a == b && pos_of(v) >= i && pos_of(v) < i + length) {
        return false;
    }
    const NodeId first = u;
    const NodeId last = ra[static_cast<std::size_t>(i + length - 1)];
    const Quantity seg_load = prefix(last) - prefix(first) + demand(first);
    if (a != b && load_[static_cast<std::size_t>(b)] + seg_load > instance_.capacity()) {
        return false;
    }
    const NodeId p = prev(first);
    const NodeId n = next(last);
    const double removal = dist_(p, n) - dist_(p, first) - dist_(last, n);

    for (const bool after : {true, false}) {
        if ((after && v == p) || (!after && v == n)) {
            continue;  // would put the segment back where it is
        }
        const NodeId x = after ? v : prev(v);
        const NodeId y = after ? next(v) : v;
        for (const bool reversed : {false, true}) {
            if (reversed && length == 1) {
                break;
            }
            const NodeId head = reversed ? last : first;
            const NodeId tail = reversed ? first : last;
            const double delta = removal + dist_(x, head) + dist_(tail, y) - dist_(x, y);
            if (!accept(delta)) {
                continue;
            }

            std::vector<NodeId> segment(ra.begin() + i, ra.begin() + i + length);
            if (reversed) {
                std::reverse(segment.begin(), segment.end());
            }
            ra.erase(ra.begin() + i, ra.begin() + i + length);
            auto &rb = routes_[static_cast<std::size_t>(b)];
            int target = pos_of(v);
            if (a == b && target > i) {
                target -= length;
            }
            if (after) {
                ++target;
            }
            rb.insert(rb.begin() + target, segment.begin(), segment.end());
            refresh_route(a);
            if (b != a) {
                refresh_route(b);
            }
            commit(delta, "segment");
            return true;
        }
    }
    return false;
}

bool Workspace::try_swap(NodeId u, NodeId v, const Acceptor &accept) {
    const int a = route_of(u);
    const int b = route_of(v);
    if (a != b) {
        const Quantity diff = demand(v) - demand(u);
        if (load_[static_cast<std::size_t>(a)] + diff > instance_.capacity() ||
            load_[static_cast<std::size_t>(b)] - diff > instance_.capacity()) {
            return false;
        }
    }
    const int i = pos_of(u);
    const int j = pos_of(v);
    double delta = 0.0;
    if (a == b && std::abs(i - j) == 1) {
        const NodeId f = i < j ? u : v;
        const NodeId s = i < j ? v : u;
        const NodeId p = prev(f);
        const NodeId n = next(s);
        delta = dist_(p, s) + dist_(f, n) - dist_(p, f) - dist_(s, n);
    } else {
        const NodeId pu = prev(u);
        const NodeId nu = next(u);
        const NodeId pv = prev(v);
        const NodeId nv = next(v);
        delta = dist_(pu, v) + dist_(v, nu) - dist_(pu, u) - dist_(u, nu) + dist_(pv, u) + dist_(u, nv) -
                dist_(pv, v) - dist_(v, nv);
    }
    if (!accept(delta)) {
        return false;
    }
    std::swap(routes_[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)],
              routes_[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)]);
    refresh_route(a);
    if (b != a) {
        refresh_route(b);
    }
    commit(delta, "swap");
    return true;
}

// Intra-route 2-opt: reverse a stretch so that u and v become adjacent.
bool Workspace::try_two_opt(NodeId u, NodeId v, const Acceptor &accept) {
    const int r = route_of(u);
    auto &nodes = routes_[static_cast<std::size_t>(r)];
    const auto lo = static_cast<std::size_t>(std::min(pos_of(u), pos_of(v)));
    const auto hi = static_cast<std::size_t>(std::max(pos_of(u), pos_of(v)));
    const NodeId x = nodes[lo];
    const NodeId y = nodes[hi];

    if (hi > lo + 1) {
        // ... x | x1 ... y | ny ...  ->  ... x y ... x1 ny ...
        const NodeId x1 = nodes[lo + 1];
        const NodeId ny = hi + 1 < nodes.size() ? nodes[hi + 1] : kDepot;
        const double delta = dist_(x, y) + dist_(x1, ny) - dist_(x, x1) - dist_(y, ny);
        if (accept(delta)) {
            std::reverse(nodes.begin() + static_cast<std::ptrdiff_t>(lo + 1),
                         nodes.begin() + static_cast<std::ptrdiff_t>(hi + 1));
            refresh_route(r);
            commit(delta, "2-opt");
            return true;
        }
        // ... px | x ... y1 | y ...  ->  ... px y1 ... x y ...
        const NodeId px = lo > 0 ? nodes[lo - 1] : kDepot;
        const NodeId y1 = nodes[hi - 1];
        const double delta2 = dist_(px, y1) + dist_(x, y) - dist_(px, x) - dist_(y1, y);
        if (accept(delta2)) {
            std::reverse(nodes.begin() + static_cast<std::ptrdiff_t>(lo), nodes.begin() + static_cast<std::ptrdiff_t>(hi));
            refresh_route(r);
            commit(delta2, "2-opt");
            return true;
        }
    }
    return false;
}

// Inter-route 2-opt*: exchange route tails so that u is followed by v.
bool Workspace::try_two_opt_star(NodeId u, NodeId v, const Acceptor &accept) {
    const int a = route_of(u);
    const int b = route_of(v);
    const Quantity cap = instance_.capacity();
    const Quantity load_a = load_[static_cast<std::size_t>(a)];
    const Quantity load_b = load_[static_cast<std::size_t>(b)];
    const Quantity head_a = prefix(u);
    const Quantity head_b = prefix(v);
    const NodeId nu = next(u);
    const NodeId pv = prev(v);
    const NodeId nv = next(v);
    auto &ra = routes_[static_cast<std::size_t>(a)];
    auto &rb = routes_[static_cast<std::size_t>(b)];
    const auto i = static_cast<std::ptrdiff_t>(pos_of(u));
    const auto j = static_cast<std::ptrdiff_t>(pos_of(v));

    // A' = A[..u] + B[v..],  B' = B[..pv] + A[nu..]
    {
        const Quantity before_v = head_b - demand(v);
        if (head_a + load_b - before_v <= cap && before_v + load_a - head_a <= cap) {
            const double delta = dist_(u, v) + dist_(pv, nu) - dist_(u, nu) - dist_(pv, v);
            if (accept(delta)) {
                std::vector<NodeId> new_a(ra.begin(), ra.begin() + i + 1);
                new_a.insert(new_a.end(), rb.begin() + j, rb.end());
                std::vector<NodeId> new_b(rb.begin(), rb.begin() + j);
                new_b.insert(new_b.end(), ra.begin() + i + 1, ra.end());
                ra = std::move(new_a);
                rb = std::move(new_b);
                refresh_route(a);
                refresh_route(b);
                commit(delta, "2-opt*");
                return true;
            }
        }
    }
    // A' = A[..u] + reverse(B[..v]),  B' = reverse(A[nu..]) + B[nv..]
    if (head_a + head_b <= cap && (load_a - head_a) + (load_b - head_b) <= cap) {
        const double delta = dist_(u, v) + dist_(nu, nv) - dist_(u, nu) - dist_(v, nv);
        if (accept(delta)) {
            std::vector<NodeId> new_a(ra.begin(), ra.begin() + i + 1);
            new_a.insert(new_a.end(), std::make_reverse_iterator(rb.begin() + j + 1), rb.rend());
            std::vector<NodeId> new_b(ra.rbegin(), std::make_reverse_iterator(ra.begin() + i + 1));
            new_b.insert(new_b.end(), rb.begin() + j + 1, rb.end());
            ra = std::move(new_a);
            rb = std::move(new_b);
            refresh_route(a);
            refresh_route(b);
            commit(delta, "2-opt*");
            return true;
        }
    }
    return false;
}

std::int64_t Workspace::descend(const std::function<bool()> &out_of_time) {
    std::int64_t applied = 0;
    const Acceptor improving = [this](double delta) { return delta < -epsilon(); };
    bool improved = true;
    while (improved) {
        improved = false;
        for (NodeId u = 1; u <= size(); ++u) {
            if (try_moves(u, improving)) {
                ++applied;
                improved = true;
            }
        }
        if (out_of_time && out_of_time()) {
            break;
        }
    }
    resync_cost();
    return applied;
}

std::int64_t Workspace::uphill_pass(double threshold, Rng &rng) {
    std::vector<NodeId> order(static_cast<std::size_t>(size()));
    std::iota(order.begin(), order.end(), 1);
    rng.shuffle(std::span<NodeId>(order));
    const Acceptor within_band = [this, threshold](double delta) {
        return std::abs(delta) > epsilon() && cost_ + delta <= threshold;
    };
    std::int64_t applied = 0;
    for (const NodeId u : order) {
        if (try_moves(u, within_band)) {
            ++applied;
        }
    }
    resync_cost();
    return applied;
}

void Workspace::insert_cheapest(NodeId u) {
    const Quantity q = demand(u);
    double best = dist_(kDepot, u) * 2.0;
    int best_route = -1;
    std::size_t best_pos = 0;
    for (std::size_t r = 0; r < routes_.size(); ++r) {
        const auto &nodes = routes_[r];
        if (nodes.empty() || load_[r] + q > instance_.capacity()) {
            continue;
        }
        NodeId before = kDepot;
        for (std::size_t k = 0; k <= nodes.size(); ++k) {
            const NodeId after = k < nodes.size() ? nodes[k] : kDepot;
            const double delta = dist_(before, u) + dist_(u, after) - dist_(before, after);
            if (delta < best - 1e-12) {
                best = delta;
                best_route = static_cast<int>(r);
                best_pos = k;
            }
            before = after;
        }
    }
    if (best_route < 0) {
        const auto empty = std::find_if(routes_.begin(), routes_.end(), [](const auto &n) { return n.empty(); });
        if (empty != routes_.end()) {
            best_route = static_cast<int>(empty - routes_.begin());
        } else {
            best_route = static_cast<int>(routes_.size());
            routes_.emplace_back();
            load_.push_back(0);
        }
        best_pos = 0;
    }
    auto &nodes = routes_[static_cast<std::size_t>(best_route)];
    nodes.insert(nodes.begin() + static_cast<std::ptrdiff_t>(best_pos), u);
    refresh_route(best_route);
}

void Workspace::perturb(Rng &rng) {
    const int m = size();
    if (m < 2) {
        return;
    }
    const auto seed = static_cast<NodeId>(1 + rng.below(static_cast<std::uint64_t>(m)));
    const auto &near = neighbors_[static_cast<std::size_t>(seed)];
    const int max_size = std::min<int>(static_cast<int>(near.size()) + 1, std::max(3, std::min(15, m / 4 + 2)));
    const int min_size = std::min(max_size, 2);
    const auto count = static_cast<std::size_t>(rng.between(min_size, max_size));

    std::vector<NodeId> ejected{seed};
    for (std::size_t k = 0; ejected.size() < count; ++k) {
        ejected.push_back(near[k]);
    }
    std::vector<char> removed(static_cast<std::size_t>(m) + 1, 0);
    for (const NodeId u : ejected) {
        removed[static_cast<std::size_t>(u)] = 1;
    }
    for (std::size_t r = 0; r < routes_.size(); ++r) {
        auto &nodes = routes_[r];
        std::erase_if(nodes, [&removed](NodeId u) { return removed[static_cast<std::size_t>(u)] != 0; });
        refresh_route(static_cast<int>(r));
    }
    rng.shuffle(std::span<NodeId>(ejected));
    for (const NodeId u : ejected) {
        insert_cheapest(u);
    }
    resync_cost();
}

}  // namespace sdvrp::cvrp::detail

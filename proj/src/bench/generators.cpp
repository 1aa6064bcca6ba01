#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sdvrp/bench.hpp"
#include "sdvrp/rng.hpp"

namespace sdvrp::bench {

namespace {

std::string default_name(const GeneratorSpec &spec) {
    switch (spec.family) {
    case Family::concentric:
        return "concentric-n" + std::to_string(spec.n) + "-r" + std::to_string(spec.rings) + "-s" +
               std::to_string(spec.seed);
    case Family::random_demand:
        return "random-n" + std::to_string(spec.n) + "-q" + std::to_string(spec.capacity) + "-s" +
               std::to_string(spec.seed);
    case Family::no_pattern:
        break;
    }
    return "nopattern-n" + std::to_string(spec.n) + "-q" + std::to_string(spec.capacity) + "-s" +
           std::to_string(spec.seed);
}

std::string name_of(const GeneratorSpec &spec) { return spec.name.empty() ? default_name(spec) : spec.name; }

Point random_point(Rng &rng, double side) { return {rng.uniform(0.0, side), rng.uniform(0.0, side)}; }

std::pair<Quantity, Quantity> demand_bounds(double a, double b, Quantity q) {
    const auto lo = std::max<Quantity>(1, std::llround(a * static_cast<double>(q)));
    const auto hi = std::max<Quantity>(lo, std::llround(b * static_cast<double>(q)));
    return {lo, hi};
}

}  // namespace

void GeneratorSpec::validate() const {
    if (n < 1) {
        throw std::invalid_argument("generator needs n >= 1");
    }
    if (capacity < 1) {
        throw std::invalid_argument("generator needs a positive capacity");
    }
    switch (family) {
    case Family::concentric:
        if (rings < 1 || rings > n) {
            throw std::invalid_argument("concentric generator needs 1 <= rings <= n");
        }
        if (!(radius > 0.0)) {
            throw std::invalid_argument("ring radius must be positive");
        }
        if (capacity < 90) {
            throw std::invalid_argument("concentric demands of 90 need capacity >= 90");
        }
        break;
    case Family::random_demand:
        if (!(demand_low > 0.0 && demand_low < demand_high && demand_high <= 1.0)) {
            throw std::invalid_argument("demand bounds need 0 < a < b <= 1");
        }
        [[fallthrough]];
    case Family::no_pattern:
        if (!(side > 0.0)) {
            throw std::invalid_argument("square side must be positive");
        }
        break;
    }
}

const std::vector<std::pair<double, double>> &demand_presets() {
    static const std::vector<std::pair<double, double>> presets{
        {0.01, 0.1}, {0.1, 0.3}, {0.1, 0.5}, {0.1, 0.9}, {0.3, 0.7}, {0.7, 0.9},
    };
    return presets;
}

Instance generate_concentric(const GeneratorSpec &spec) {
    GeneratorSpec s = spec;
    s.family = Family::concentric;
    s.validate();
    Rng rng(s.seed);
    std::vector<Customer> customers;
    NodeId id = 1;
    for (int ring = 0; ring < s.rings; ++ring) {
        const int count = s.n / s.rings + (ring < s.n % s.rings ? 1 : 0);
        const double r = s.radius * (ring + 1);
        for (int k = 0; k < count; ++k) {
            const double angle = 2.0 * std::numbers::pi * k / count;
            const Quantity demand = rng.below(2) == 0 ? 60 : 90;
            customers.push_back({id++, {r * std::cos(angle), r * std::sin(angle)}, demand});
        }
    }
    return Instance(name_of(s), {0.0, 0.0}, std::move(customers), s.capacity);
}

Instance generate_random_demand(const GeneratorSpec &spec) {
    GeneratorSpec s = spec;
    s.family = Family::random_demand;
    s.validate();
    Rng rng(s.seed);
    const auto [lo, hi] = demand_bounds(s.demand_low, s.demand_high, s.capacity);
    std::vector<Customer> customers;
    for (NodeId id = 1; id <= s.n; ++id) {
        const Point p = random_point(rng, s.side);
        customers.push_back({id, p, rng.between(lo, hi)});
    }
    return Instance(name_of(s), {s.side / 2, s.side / 2}, std::move(customers), s.capacity);
}

Instance generate_no_pattern(const GeneratorSpec &spec) {
    GeneratorSpec s = spec;
    s.family = Family::no_pattern;
    s.validate();
    Rng rng(s.seed);
    const auto &presets = demand_presets();
    std::vector<Customer> customers;
    for (NodeId id = 1; id <= s.n; ++id) {
        const Point p = random_point(rng, s.side);
        const auto &[a, b] = presets[rng.below(presets.size())];
        const auto [lo, hi] = demand_bounds(a, b, s.capacity);
        customers.push_back({id, p, rng.between(lo, hi)});
    }
    return Instance(name_of(s), {s.side / 2, s.side / 2}, std::move(customers), s.capacity);
}

Instance generate(const GeneratorSpec &spec) {
    switch (spec.family) {
    case Family::concentric:
        return generate_concentric(spec);
    case Family::random_demand:
        return generate_random_demand(spec);
    case Family::no_pattern:
        break;
    }
    return generate_no_pattern(spec);
}

GeneratorSpec parse_generator_spec(std::string_view text) {
    const auto usage = [&text](const std::string &why) {
        return std::invalid_argument("bad generator spec '" + std::string(text) + "': " + why +
                                     " (expected concentric|random|nopattern[:key=value,...])");
    };
    GeneratorSpec spec;
    const auto colon = text.find(':');
    const std::string_view family = text.substr(0, colon);
    if (family == "concentric") {
        spec.family = Family::concentric;
    } else if (family == "random") {
        spec.family = Family::random_demand;
    } else if (family == "nopattern") {
        spec.family = Family::no_pattern;
    } else {
        throw usage("unknown family");
    }
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw usage("option without '='");
        }
        const std::string_view key = item.substr(0, eq);
        const std::string_view value = item.substr(eq + 1);
        const auto as_int = [&]() -> std::int64_t {
            std::int64_t v = 0;
            const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc{} || p != value.data() + value.size()) {
                throw usage("'" + std::string(key) + "' needs an integer");
            }
            return v;
        };
        const auto as_real = [&]() -> double {
            double v = 0;
            const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc{} || p != value.data() + value.size()) {
                throw usage("'" + std::string(key) + "' needs a number");
            }
            return v;
        };
        if (key == "n") {
            spec.n = static_cast<int>(as_int());
        } else if (key == "q") {
            spec.capacity = as_int();
        } else if (key == "seed") {
            const auto v = as_int();
            if (v < 0) {
                throw usage("seed must be non-negative");
            }
            spec.seed = static_cast<std::uint64_t>(v);
        } else if (key == "rings") {
            spec.rings = static_cast<int>(as_int());
        } else if (key == "radius") {
            spec.radius = as_real();
        } else if (key == "a") {
            spec.demand_low = as_real();
        } else if (key == "b") {
            spec.demand_high = as_real();
        } else if (key == "side") {
            spec.side = as_real();
        } else if (key == "name") {
            spec.name = std::string(value);
        } else {
            throw usage("unknown key '" + std::string(key) + "'");
        }
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument &e) {
        throw usage(e.what());
    }
    return spec;
}

}  // namespace sdvrp::bench

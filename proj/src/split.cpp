#include "sdvrp/split.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sdvrp/errors.hpp"

namespace sdvrp {

SplitRule::SplitRule(std::vector<Quantity> pieces) : pieces_(std::move(pieces)) {
    std::sort(pieces_.begin(), pieces_.end(), std::greater<>());
    if (std::adjacent_find(pieces_.begin(), pieces_.end()) != pieces_.end()) {
        throw std::invalid_argument("split rule pieces must be distinct");
    }
    if (!pieces_.empty() && pieces_.back() <= 0) {
        throw std::invalid_argument("split rule pieces must be positive");
    }
}

std::string SplitRule::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (i > 0) {
            out += '/';
        }
        out += std::to_string(pieces_[i]);
    }
    return out;
}

namespace {

ExpandedInstance assemble(const Instance &instance, const std::vector<std::vector<Quantity>> &pieces) {
    std::vector<Customer> expanded;
    std::vector<NodeId> origin;
    for (const Customer &c : instance.customers()) {
        for (const Quantity q : pieces[static_cast<std::size_t>(c.id - 1)]) {
            expanded.push_back({static_cast<NodeId>(expanded.size() + 1), c.coord, q});
            origin.push_back(c.id);
        }
    }
    return {instance, Instance(instance.name(), instance.depot(), std::move(expanded), instance.capacity()),
            std::move(origin)};
}

// Take as many of each denomination as fit, in order,
// then keep whatever is left as a single piece.
std::vector<Quantity> largest_first_with_residual(Quantity demand, const std::vector<Quantity> &denominations) {
    std::vector<Quantity> pieces;
    Quantity rest = demand;
    for (const Quantity denom : denominations) {
        const Quantity count = rest / denom;
        pieces.insert(pieces.end(), static_cast<std::size_t>(count), denom);
        rest -= count * denom;
    }
    if (rest > 0) {
        pieces.push_back(rest);
    }
    return pieces;
}

bool is_prime(int p) {
    if (p < 2) {
        return false;
    }
    for (int k = 2; k * k <= p; ++k) {
        if (p % k == 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Quantity> CoinRule::denominations(Quantity capacity) const {
    if (fractions.empty()) {
        throw std::invalid_argument("coin rule has no fractions");
    }
    std::vector<Quantity> out;
    double previous = 2.0;
    for (const double f : fractions) {
        if (!(f > 0.0 && f <= 1.0) || f >= previous) {
            throw std::invalid_argument("coin fractions must be descending and within (0, 1]");
        }
        previous = f;
        const Quantity denom = std::llround(f * static_cast<double>(capacity));
        if (denom < 1) {
            throw std::invalid_argument("capacity " + std::to_string(capacity) + " too small for coin fraction " +
                                        std::to_string(f));
        }
        out.push_back(denom);
    }
    return out;
}

ExpandedInstance coin_expand(const Instance &instance, const CoinRule &rule) {
    const auto denominations = rule.denominations(instance.capacity());
    std::vector<std::vector<Quantity>> pieces;
    pieces.reserve(static_cast<std::size_t>(instance.size()));
    for (const Customer &c : instance.customers()) {
        if (c.demand <= 0) {
            throw std::invalid_argument("customer " + std::to_string(c.id) + " has no demand to split");
        }
        pieces.push_back(largest_first_with_residual(c.demand, denominations));
    }
    return assemble(instance, pieces);
}

ExpandedInstance uniform_expand(const Instance &instance, const SplitRule &rule) {
    if (rule.empty()) {
        throw std::invalid_argument("empty split rule");
    }
    if (rule.largest() > instance.capacity()) {
        throw std::invalid_argument("rule piece " + std::to_string(rule.largest()) + " exceeds capacity");
    }
    std::vector<std::vector<Quantity>> pieces;
    pieces.reserve(static_cast<std::size_t>(instance.size()));
    for (const Customer &c : instance.customers()) {
        pieces.push_back(largest_first_with_residual(c.demand, rule.pieces()));
    }
    return assemble(instance, pieces);
}

ExpandedInstance no_split_expand(const Instance &instance) {
    for (const Customer &c : instance.customers()) {
        if (c.demand > instance.capacity()) {
            throw InfeasibleError("customer " + std::to_string(c.id) + " demand " + std::to_string(c.demand) +
                                  " exceeds capacity " + std::to_string(instance.capacity()) +
                                  "; cannot solve without splitting");
        }
    }
    std::vector<NodeId> origin(static_cast<std::size_t>(instance.size()));
    std::iota(origin.begin(), origin.end(), 1);
    return {instance, instance, std::move(origin)};
}

void PasaConfig::validate() const {
    if (levels < 1) {
        throw std::invalid_argument("PASA needs at least one level");
    }
    if (!is_prime(prime)) {
        throw std::invalid_argument("PASA base " + std::to_string(prime) + " is not prime");
    }
}

ClusterLabels cluster_customers(const Instance &instance, int levels) {
    if (levels < 1) {
        throw std::invalid_argument("number of levels must be at least 1");
    }
    ClusterLabels out;
    out.levels = levels;
    std::vector<double> dist;
    dist.reserve(static_cast<std::size_t>(instance.size()));
    for (const Customer &c : instance.customers()) {
        dist.push_back(instance.distance(kDepot, c.id));
        out.max_distance = std::max(out.max_distance, dist.back());
    }

    // Ring l covers ((l-1)/L * max, l/L * max].
    const double max = out.max_distance;
    auto upper = [levels, max](int l) { return static_cast<double>(l) / levels * max; };
    out.labels.reserve(dist.size());
    for (const double d : dist) {
        if (max <= 0.0 || d <= 0.0) {
            out.labels.push_back(1);
            continue;
        }
        int l = static_cast<int>(std::ceil(d / max * levels));
        l = std::clamp(l, 1, levels);
        while (l > 1 && d <= upper(l - 1)) {
            --l;
        }
        while (l < levels && d > upper(l)) {
            ++l;
        }
        out.labels.push_back(l);
    }
    return out;
}

PasaParameters pasa_parameters(const Instance &instance, const PasaConfig &config) {
    config.validate();
    PasaParameters params;
    params.unit = instance.capacity();
    for (const Customer &c : instance.customers()) {
        params.unit = std::gcd(params.unit, c.demand);
    }
    if (instance.size() == 0) {
        params.mean_units = 1.0;
        return params;
    }
    double units = 0.0;
    for (const Customer &c : instance.customers()) {
        units += static_cast<double>(c.demand / params.unit);
    }
    params.mean_units = units / instance.size();

    const double exponent = std::log(params.mean_units) / std::log(static_cast<double>(config.prime));
    switch (config.rounding) {
    case SmaxRounding::half_up: params.max_exponent = static_cast<int>(std::floor(exponent + 0.5)); break;
    case SmaxRounding::ceiling: params.max_exponent = static_cast<int>(std::ceil(exponent - 1e-9)); break;
    case SmaxRounding::floor: params.max_exponent = static_cast<int>(std::floor(exponent + 1e-9)); break;
    }
    params.max_exponent = std::max(params.max_exponent, 0);
    return params;
}

std::vector<SplitRule> build_pasa_rules(const Instance &instance, const PasaConfig &config) {
    const PasaParameters params = pasa_parameters(instance, config);
    std::vector<SplitRule> rules;
    rules.reserve(static_cast<std::size_t>(config.levels));
    for (int i = 1; i <= config.levels; ++i) {
        const int top = params.max_exponent - i + 1;
        std::vector<Quantity> pieces{params.unit};
        Quantity piece = params.unit;
        for (int k = 1; k <= top; ++k) {
            if (piece > instance.capacity() / config.prime) {
                break;  // next power exceeds Q
            }
            piece *= config.prime;
            pieces.push_back(piece);
        }
        rules.emplace_back(std::move(pieces));
    }
    return rules;
}

std::vector<Quantity> greedy_decompose(Quantity demand, const SplitRule &rule) {
    if (rule.empty()) {
        throw std::invalid_argument("empty split rule");
    }
    if (demand <= 0) {
        throw std::invalid_argument("demand must be positive");
    }
    if (demand % rule.smallest() != 0) {
        throw std::invalid_argument("demand " + std::to_string(demand) + " is not a multiple of the smallest piece " +
                                    std::to_string(rule.smallest()));
    }
    std::vector<Quantity> pieces;
    Quantity rest = demand;
    for (const Quantity piece : rule.pieces()) {
        while (rest >= piece) {
            pieces.push_back(piece);
            rest -= piece;
        }
    }
    if (rest != 0) {
        throw std::invalid_argument("rule " + rule.to_string() + " leaves remainder " + std::to_string(rest) +
                                    " for demand " + std::to_string(demand));
    }
    return pieces;
}

ExpandedInstance pasa_expand(const Instance &instance, const PasaConfig &config) {
    const auto rules = build_pasa_rules(instance, config);
    const auto rings = cluster_customers(instance, config.levels);
    std::vector<std::vector<Quantity>> pieces;
    pieces.reserve(static_cast<std::size_t>(instance.size()));
    for (const Customer &c : instance.customers()) {
        const auto &rule = rules[static_cast<std::size_t>(rings.rule_index(c.id) - 1)];
        pieces.push_back(greedy_decompose(c.demand, rule));
    }
    return assemble(instance, pieces);
}

// ---------------------------------------------------------------------------

namespace {

const char *kStrategyUsage = "expected none | coin20 | coin25 | pasa[:L=<int>,p=<int>] | rule:<q>/<q>/...";

int parse_positive(std::string_view text, std::string_view what) {
    int value = 0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw std::invalid_argument("bad value '" + std::string(text) + "' for " + std::string(what));
    }
    return value;
}

}  // namespace

Strategy parse_strategy(std::string_view text) {
    if (text == "none") {
        return NoSplit{};
    }
    if (text == "coin20") {
        return Coin20{};
    }
    if (text == "coin25") {
        return Coin25{};
    }
    if (text.starts_with("rule:")) {
        std::vector<Quantity> pieces;
        std::string_view rest = text.substr(5);
        while (!rest.empty()) {
            const auto slash = rest.find('/');
            pieces.push_back(parse_positive(rest.substr(0, slash), "rule piece"));
            if (pieces.back() <= 0) {
                throw std::invalid_argument("rule pieces must be positive");
            }
            rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);
        }
        if (pieces.empty()) {
            throw std::invalid_argument(std::string("empty rule; ") + kStrategyUsage);
        }
        return FixedRule{SplitRule(std::move(pieces))};
    }
    if (text == "pasa" || text.starts_with("pasa:")) {
        Pasa pasa;
        std::string_view rest = text.size() > 4 ? text.substr(5) : std::string_view{};
        if (text.size() > 4 && rest.empty()) {
            throw std::invalid_argument(std::string("empty pasa options; ") + kStrategyUsage);
        }
        while (!rest.empty()) {
            const auto sep = rest.find_first_of(",;");
            const std::string_view option = rest.substr(0, sep);
            rest = sep == std::string_view::npos ? std::string_view{} : rest.substr(sep + 1);
            const auto eq = option.find('=');
            if (eq == std::string_view::npos) {
                throw std::invalid_argument("pasa option '" + std::string(option) + "' needs key=value");
            }
            const auto key = option.substr(0, eq);
            const auto value = option.substr(eq + 1);
            if (key == "L" || key == "l") {
                pasa.config.levels = parse_positive(value, "L");
            } else if (key == "p" || key == "P") {
                pasa.config.prime = parse_positive(value, "p");
            } else if (key == "round") {
                if (value == "half-up") {
                    pasa.config.rounding = SmaxRounding::half_up;
                } else if (value == "ceil") {
                    pasa.config.rounding = SmaxRounding::ceiling;
                } else if (value == "floor") {
                    pasa.config.rounding = SmaxRounding::floor;
                } else {
                    throw std::invalid_argument("round must be half-up, ceil or floor");
                }
            } else {
                throw std::invalid_argument("unknown pasa option '" + std::string(key) + "'");
            }
        }
        pasa.config.validate();
        return pasa;
    }
    throw std::invalid_argument("unknown strategy '" + std::string(text) + "'; " + kStrategyUsage);
}

std::string to_string(const Strategy &strategy) {
    struct Visitor {
        std::string operator()(const NoSplit &) const { return "none"; }
        std::string operator()(const Coin20 &) const { return "coin20"; }
        std::string operator()(const Coin25 &) const { return "coin25"; }
        std::string operator()(const FixedRule &r) const { return "rule:" + r.rule.to_string(); }
        std::string operator()(const Pasa &p) const {
            std::string out = "pasa:L=" + std::to_string(p.config.levels) + ";p=" + std::to_string(p.config.prime);
            if (p.config.rounding == SmaxRounding::ceiling) {
                out += ";round=ceil";
            } else if (p.config.rounding == SmaxRounding::floor) {
                out += ";round=floor";
            }
            return out;
        }
    };
    return std::visit(Visitor{}, strategy);
}

ExpandedInstance expand(const Instance &instance, const Strategy &strategy) {
    struct Visitor {
        const Instance &instance;
        ExpandedInstance operator()(const NoSplit &) const { return no_split_expand(instance); }
        ExpandedInstance operator()(const Coin20 &) const { return coin_expand(instance, CoinRule::twenty()); }
        ExpandedInstance operator()(const Coin25 &) const { return coin_expand(instance, CoinRule::twenty_five()); }
        ExpandedInstance operator()(const Pasa &p) const { return pasa_expand(instance, p.config); }
        ExpandedInstance operator()(const FixedRule &r) const { return uniform_expand(instance, r.rule); }
    };
    return std::visit(Visitor{instance}, strategy);
}

}  // namespace sdvrp

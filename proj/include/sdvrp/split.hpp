#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sdvrp/model.hpp"

namespace sdvrp {

/// Strictly descending piece sizes used to decompose one customer's demand.
class SplitRule {
public:
    SplitRule() = default;
    /// Sorts descending; throws std::invalid_argument on duplicates or
    /// non-positive pieces.
    explicit SplitRule(std::vector<Quantity> pieces);

    const std::vector<Quantity> &pieces() const { return pieces_; }
    Quantity largest() const { return pieces_.front(); }
    Quantity smallest() const { return pieces_.back(); }
    bool empty() const { return pieces_.empty(); }

    /// "80/40/20/10"
    std::string to_string() const;

    friend bool operator==(const SplitRule &, const SplitRule &) = default;

private:
    std::vector<Quantity> pieces_;
};

/// A CVRP instance built by splitting demands into co-located pieces.
struct ExpandedInstance {
    Instance original;
    Instance cvrp;
    /// origin[k - 1] is the original customer that expanded customer k came from.
    std::vector<NodeId> origin;

    NodeId origin_of(NodeId expanded) const { return origin.at(static_cast<std::size_t>(expanded - 1)); }
    int expanded_size() const { return cvrp.size(); }
};

/// Coin rules use fixed capacity fractions. Denominations are
/// round(fraction * Q), which must be at least 1.
struct CoinRule {
    std::vector<double> fractions;

    static CoinRule twenty() { return {{0.20, 0.10, 0.05, 0.01}}; }
    static CoinRule twenty_five() { return {{0.25, 0.10, 0.05, 0.01}}; }

    std::vector<Quantity> denominations(Quantity capacity) const;
};

/// Splits each demand largest-denomination-first; a remainder smaller than
/// the last denomination becomes one extra piece.
ExpandedInstance coin_expand(const Instance &instance, const CoinRule &rule);

/// Same largest-first scheme as coin_expand but with explicit piece sizes
/// applied to every customer. Pieces larger than Q are rejected.
ExpandedInstance uniform_expand(const Instance &instance, const SplitRule &rule);

/// Identity expansion; throws InfeasibleError if some demand exceeds Q.
ExpandedInstance no_split_expand(const Instance &instance);

// ---------------------------------------------------------------------------
// Adaptive splitting

enum class SmaxRounding { half_up, ceiling, floor };

struct PasaConfig {
    int levels = 2;  // number of distance rings L
    int prime = 2;   // base p of the piece powers
    SmaxRounding rounding = SmaxRounding::half_up;

    /// Throws std::invalid_argument unless levels >= 1 and prime is prime.
    void validate() const;
};

/// Distance rings around the depot. label 1 is the innermost ring; the
/// outermost ring (label L) gets rule index 1, the coarsest rule.
struct ClusterLabels {
    int levels = 1;
    double max_distance = 0.0;
    std::vector<int> labels;  // labels[i - 1] for customer i, each in 1..levels

    int label(NodeId customer) const { return labels.at(static_cast<std::size_t>(customer - 1)); }
    int rule_index(NodeId customer) const { return levels + 1 - label(customer); }
};

ClusterLabels cluster_customers(const Instance &instance, int levels);

struct PasaParameters {
    Quantity unit = 0;  // gcd of capacity and all demands
    double mean_units = 0.0;
    int max_exponent = 0;
};

PasaParameters pasa_parameters(const Instance &instance, const PasaConfig &config);

/// Rules for rule indices 1..L (element 0 is rule 1, the coarsest).
std::vector<SplitRule> build_pasa_rules(const Instance &instance, const PasaConfig &config);

/// Largest-first decomposition. Throws std::invalid_argument if the demand
/// cannot be covered exactly.
std::vector<Quantity> greedy_decompose(Quantity demand, const SplitRule &rule);

ExpandedInstance pasa_expand(const Instance &instance, const PasaConfig &config);

// ---------------------------------------------------------------------------
// Strategy selector: none | coin20 | coin25 | pasa[:L=<int>,p=<int>[,round=half-up|ceil|floor]]
// | rule:<piece>/<piece>/...

struct NoSplit {
    friend bool operator==(const NoSplit &, const NoSplit &) = default;
};
struct Coin20 {
    friend bool operator==(const Coin20 &, const Coin20 &) = default;
};
struct Coin25 {
    friend bool operator==(const Coin25 &, const Coin25 &) = default;
};
struct Pasa {
    PasaConfig config;
    friend bool operator==(const Pasa &a, const Pasa &b) {
        return a.config.levels == b.config.levels && a.config.prime == b.config.prime &&
               a.config.rounding == b.config.rounding;
    }
};
struct FixedRule {
    SplitRule rule;
    friend bool operator==(const FixedRule &, const FixedRule &) = default;
};

using Strategy = std::variant<NoSplit, Coin20, Coin25, Pasa, FixedRule>;

/// Throws std::invalid_argument with a usage hint on malformed input.
/// Options inside pasa may be separated by ',' or ';'.
Strategy parse_strategy(std::string_view text);

/// Canonical, comma-free label, e.g. "pasa:L=2;p=2".
std::string to_string(const Strategy &strategy);

ExpandedInstance expand(const Instance &instance, const Strategy &strategy);

}  // namespace sdvrp

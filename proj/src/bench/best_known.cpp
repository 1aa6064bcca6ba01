#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "sdvrp/bench.hpp"
#include "sdvrp/errors.hpp"

namespace sdvrp::bench {

void BestKnownTable::insert(const std::string &name, double cost) {
    if (!(cost > 0.0)) {
        throw std::invalid_argument("best-known cost for " + name + " must be positive");
    }
    if (!costs_.emplace(name, cost).second) {
        throw std::invalid_argument("duplicate best-known entry " + name);
    }
}

std::optional<double> BestKnownTable::lookup(const std::string &name) const {
    const auto it = costs_.find(name);
    if (it == costs_.end()) {
        return std::nullopt;
    }
    return it->second;
}

BestKnownTable load_best_known(std::istream &in) {
    BestKnownTable table;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream fields(raw);
        std::string name;
        std::string cost_text;
        std::string extra;
        if (!(fields >> name)) {
            continue;
        }
        if (!(fields >> cost_text) || (fields >> extra)) {
            throw ParseError(line_no, "expected '<name> <cost>'");
        }
        double cost = 0.0;
        const auto [ptr, ec] = std::from_chars(cost_text.data(), cost_text.data() + cost_text.size(), cost);
        if (ec != std::errc{} || ptr != cost_text.data() + cost_text.size()) {
            throw ParseError(line_no, "malformed cost '" + cost_text + "'");
        }
        try {
            table.insert(name, cost);
        } catch (const std::invalid_argument &e) {
            throw ParseError(line_no, e.what());
        }
    }
    return table;
}

BestKnownTable load_best_known_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_best_known(in);
}

BestKnownTable read_best_known_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path.string());
    }
    return load_best_known(in);
}

}  // namespace sdvrp::bench

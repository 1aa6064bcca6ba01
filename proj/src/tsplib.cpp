#include "sdvrp/tsplib.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "sdvrp/errors.hpp"

namespace sdvrp::tsplib {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

std::optional<std::int64_t> to_int(std::string_view token) {
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    std::int64_t value = 0;
    const auto *end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end || token.empty()) {
        return std::nullopt;
    }
    return value;
}

std::optional<double> to_double(std::string_view token) {
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    double value = 0.0;
    const auto *end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end || token.empty()) {
        return std::nullopt;
    }
    return value;
}

bool starts_numeric(std::string_view line) {
    const char c = line.front();
    return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.';
}

// Reads lines, tracking 1-based numbers and stripping CR.
class LineReader {
public:
    explicit LineReader(std::istream &in) : in_(in) {}

    bool next(std::string &line) {
        if (!std::getline(in_, line)) {
            return false;
        }
        ++number_;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        return true;
    }

    std::size_t number() const { return number_; }

private:
    std::istream &in_;
    std::size_t number_ = 0;
};

enum class Section { none, coords, demands, depots };

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

Instance parse_instance(std::istream &in, const WarningSink &warn) {
    LineReader reader(in);
    std::string raw;

    std::string name;
    std::optional<std::int64_t> dimension;
    std::optional<std::int64_t> capacity;
    std::map<std::int64_t, Point> coords;
    std::map<std::int64_t, std::int64_t> demands;
    std::vector<std::int64_t> depots;
    bool depot_section_closed = false;
    Section section = Section::none;

    auto fail = [&reader](const std::string &what) -> ParseError { return ParseError(reader.number(), what); };
    auto check_node_id = [&](std::int64_t id) {
        if (!dimension) {
            throw fail("DIMENSION must appear before node sections");
        }
        if (id < 1 || id > *dimension) {
            throw fail("node id " + std::to_string(id) + " outside 1.." + std::to_string(*dimension));
        }
    };

    while (reader.next(raw)) {
        const std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }

        if (starts_numeric(line)) {
            const auto parts = tokens(line);
            switch (section) {
            case Section::none:
                throw fail("data line outside of any section");
            case Section::coords: {
                if (parts.size() != 3) {
                    throw fail("expected '<id> <x> <y>'");
                }
                const auto id = to_int(parts[0]);
                const auto x = to_double(parts[1]);
                const auto y = to_double(parts[2]);
                if (!id || !x || !y) {
                    throw fail("malformed coordinate line");
                }
                check_node_id(*id);
                if (!coords.emplace(*id, Point{*x, *y}).second) {
                    throw fail("duplicate node id " + std::to_string(*id) + " in NODE_COORD_SECTION");
                }
                break;
            }
            case Section::demands: {
                if (parts.size() != 2) {
                    throw fail("expected '<id> <demand>'");
                }
                const auto id = to_int(parts[0]);
                if (!id) {
                    throw fail("malformed node id '" + std::string(parts[0]) + "'");
                }
                const auto demand = to_int(parts[1]);
                if (!demand) {
                    throw fail("demand '" + std::string(parts[1]) + "' is not an integer");
                }
                check_node_id(*id);
                if (*demand < 0) {
                    throw fail("negative demand");
                }
                if (!demands.emplace(*id, *demand).second) {
                    throw fail("duplicate node id " + std::to_string(*id) + " in DEMAND_SECTION");
                }
                break;
            }
            case Section::depots: {
                for (const auto part : parts) {
                    const auto id = to_int(part);
                    if (!id) {
                        throw fail("malformed depot id");
                    }
                    if (depot_section_closed) {
                        throw fail("data after DEPOT_SECTION terminator");
                    }
                    if (*id == -1) {
                        depot_section_closed = true;
                        continue;
                    }
                    check_node_id(*id);
                    depots.push_back(*id);
                }
                break;
            }
            }
            continue;
        }

        // Keyword line: `KEY : value`, `KEY: value`, or a bare section name.
        std::string_view key;
        std::string_view value;
        if (const auto colon = line.find(':'); colon != std::string_view::npos) {
            key = trim(line.substr(0, colon));
            value = trim(line.substr(colon + 1));
        } else {
            const auto space = line.find_first_of(" \t");
            key = line.substr(0, space);
            value = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
        }

        if (key == "EOF") {
            break;
        }
        if (key == "NODE_COORD_SECTION") {
            section = Section::coords;
        } else if (key == "DEMAND_SECTION") {
            section = Section::demands;
        } else if (key == "DEPOT_SECTION") {
            section = Section::depots;
        } else if (key.ends_with("_SECTION")) {
            throw fail("unknown section " + std::string(key));
        } else {
            section = Section::none;
            if (key == "NAME") {
                name = std::string(value);
            } else if (key == "TYPE") {
                if (value != "CVRP" && value != "SDVRP") {
                    throw fail("unsupported TYPE '" + std::string(value) + "'");
                }
            } else if (key == "DIMENSION") {
                dimension = to_int(value);
                if (!dimension || *dimension < 1) {
                    throw fail("DIMENSION must be a positive integer");
                }
            } else if (key == "CAPACITY") {
                capacity = to_int(value);
                if (!capacity || *capacity <= 0) {
                    throw fail("CAPACITY must be a positive integer");
                }
            } else if (key == "EDGE_WEIGHT_TYPE") {
                if (value != "EUC_2D") {
                    throw fail("unsupported EDGE_WEIGHT_TYPE '" + std::string(value) + "' (only EUC_2D)");
                }
            } else if (key == "COMMENT") {
                // informational
            } else if (warn) {
                warn(reader.number(), "ignoring unknown key " + std::string(key));
            }
        }
    }

    const std::size_t end = reader.number();
    if (!dimension) {
        throw ParseError(end, "missing DIMENSION");
    }
    if (!capacity) {
        throw ParseError(end, "missing CAPACITY");
    }
    if (static_cast<std::int64_t>(coords.size()) != *dimension) {
        throw ParseError(end, "NODE_COORD_SECTION lists " + std::to_string(coords.size()) + " nodes, DIMENSION is " +
                                  std::to_string(*dimension));
    }
    if (depots.size() > 1) {
        throw ParseError(end, "more than one depot listed");
    }
    const std::int64_t depot = depots.empty() ? 1 : depots.front();

    std::vector<Customer> customers;
    customers.reserve(static_cast<std::size_t>(*dimension - 1));
    for (const auto &[id, point] : coords) {
        const auto it = demands.find(id);
        if (id == depot) {
            if (it != demands.end() && it->second != 0) {
                throw ParseError(end, "depot demand must be 0");
            }
            continue;
        }
        if (it == demands.end()) {
            throw ParseError(end, "node " + std::to_string(id) + " has no demand");
        }
        if (it->second == 0) {
            throw ParseError(end, "customer node " + std::to_string(id) + " has zero demand");
        }
        customers.push_back({static_cast<NodeId>(customers.size() + 1), point, it->second});
    }
    return Instance(std::move(name), coords.at(depot), std::move(customers), *capacity);
}

Instance parse_instance_text(std::string_view text, const WarningSink &warn) {
    std::istringstream in{std::string(text)};
    return parse_instance(in, warn);
}

Instance read_instance_file(const std::string &path, const WarningSink &warn) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path);
    }
    return parse_instance(in, warn);
}

std::string write_instance(const Instance &instance) {
    std::ostringstream out;
    out << "NAME : " << instance.name() << '\n';
    out << "TYPE : CVRP\n";
    out << "DIMENSION : " << instance.size() + 1 << '\n';
    out << "CAPACITY : " << instance.capacity() << '\n';
    out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
    out << "NODE_COORD_SECTION\n";
    out << 1 << ' ' << format_double(instance.depot().x) << ' ' << format_double(instance.depot().y) << '\n';
    for (const auto &c : instance.customers()) {
        out << c.id + 1 << ' ' << format_double(c.coord.x) << ' ' << format_double(c.coord.y) << '\n';
    }
    out << "DEMAND_SECTION\n";
    out << "1 0\n";
    for (const auto &c : instance.customers()) {
        out << c.id + 1 << ' ' << c.demand << '\n';
    }
    out << "DEPOT_SECTION\n1\n-1\nEOF\n";
    return out.str();
}

Solution parse_solution(std::istream &in) {
    LineReader reader(in);
    std::string raw;
    Solution solution;
    bool have_cost = false;

    while (reader.next(raw)) {
        const std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (have_cost) {
            throw ParseError(reader.number(), "content after COST line");
        }
        const auto parts = tokens(line);
        if (parts.front() == "COST") {
            if (parts.size() != 2) {
                throw ParseError(reader.number(), "expected 'COST <value>'");
            }
            const auto cost = to_double(parts[1]);
            if (!cost || *cost < 0.0) {
                throw ParseError(reader.number(), "malformed cost");
            }
            solution.cost = *cost;
            have_cost = true;
            continue;
        }
        if (parts.front() != "ROUTE" || parts.size() < 3 || parts[2] != ":") {
            throw ParseError(reader.number(), "expected 'ROUTE <k> : ...' or 'COST <value>'");
        }
        const auto index = to_int(parts[1]);
        if (!index || *index != static_cast<std::int64_t>(solution.routes.size()) + 1) {
            throw ParseError(reader.number(), "route numbers must run 1, 2, ... in order");
        }
        Route route;
        for (std::size_t i = 3; i < parts.size(); ++i) {
            std::string_view tok = parts[i];
            Visit visit;
            if (tok.ends_with('*')) {
                visit.revisit = true;
                tok.remove_suffix(1);
            }
            const auto open = tok.find('(');
            if (open == std::string_view::npos || !tok.ends_with(')')) {
                throw ParseError(reader.number(), "malformed visit '" + std::string(parts[i]) + "'");
            }
            const auto id = to_int(tok.substr(0, open));
            const auto qty = to_int(tok.substr(open + 1, tok.size() - open - 2));
            if (!id || !qty) {
                throw ParseError(reader.number(), "malformed visit '" + std::string(parts[i]) + "'");
            }
            if (*id <= 0) {
                throw ParseError(reader.number(), "customer id must be positive");
            }
            if (*qty <= 0) {
                throw ParseError(reader.number(), "visit quantity must be positive");
            }
            visit.customer = static_cast<NodeId>(*id);
            visit.quantity = *qty;
            route.visits.push_back(visit);
        }
        solution.routes.push_back(std::move(route));
    }
    if (!have_cost) {
        throw ParseError(reader.number(), "missing COST line");
    }
    return solution;
}

Solution parse_solution_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_solution(in);
}

Solution read_solution_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path);
    }
    return parse_solution(in);
}

std::string write_solution(const Solution &solution) {
    std::ostringstream out;
    for (std::size_t r = 0; r < solution.routes.size(); ++r) {
        out << "ROUTE " << r + 1 << " :";
        for (const auto &v : solution.routes[r].visits) {
            out << ' ' << v.customer << '(' << v.quantity << ')';
            if (v.revisit) {
                out << '*';
            }
        }
        out << '\n';
    }
    out << "COST " << format_double(solution.cost) << '\n';
    return out.str();
}

}  // namespace sdvrp::tsplib

#pragma once

#include <functional>
#include <istream>
#include <string>
#include <string_view>

#include "sdvrp/model.hpp"

namespace sdvrp::tsplib {

using WarningSink = std::function<void(std::size_t line, std::string_view message)>;

/// Reads a TSPLIB-style CVRP/SDVRP file (EUC_2D only).
///
/// The depot is the node named in DEPOT_SECTION, or node 1 when that section
/// is absent; the remaining nodes become customers 1..n in ascending file-id
/// order. Unknown header keys are reported through `warn` and skipped.
/// Throws ParseError with the offending line number.
Instance parse_instance(std::istream &in, const WarningSink &warn = {});
Instance parse_instance_text(std::string_view text, const WarningSink &warn = {});
Instance read_instance_file(const std::string &path, const WarningSink &warn = {});

/// Depot is emitted as node 1, customer i as node i + 1; coordinates use the
/// shortest representation that reads back to the same double.
std::string write_instance(const Instance &instance);

/// One `ROUTE k : c(q) c(q) ...` line per route, then `COST <value>`.
/// A visit written as `c(q)*` carries the revisit flag.
Solution parse_solution(std::istream &in);
Solution parse_solution_text(std::string_view text);
Solution read_solution_file(const std::string &path);

std::string write_solution(const Solution &solution);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace sdvrp::tsplib

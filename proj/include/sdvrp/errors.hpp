#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdvrp {

// Malformed instance, solution, or table text. Line numbers are 1-based; 0
// means the problem was detected at end of input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A strategy cannot be applied to the instance (e.g. no-split with d_i > Q).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A pipeline result failed its own post-condition checks.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace sdvrp

#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sdvrp/model.hpp"
#include "sdvrp/rng.hpp"

namespace sdvrp::testing {

struct RandomSpec {
    int n = 8;
    Quantity capacity = 100;
    Quantity demand_min = 1;
    Quantity demand_max = 100;
    Quantity unit = 1;  // every demand is a multiple of this
    double side = 100.0;
};

inline Instance random_instance(Rng &rng, const RandomSpec &spec, const std::string &name = "rand") {
    std::vector<Customer> customers;
    for (NodeId id = 1; id <= spec.n; ++id) {
        const Point p{rng.uniform(0.0, spec.side), rng.uniform(0.0, spec.side)};
        const Quantity units = rng.between(spec.demand_min / spec.unit, spec.demand_max / spec.unit);
        customers.push_back({id, p, units * spec.unit});
    }
    const Point depot{rng.uniform(0.0, spec.side), rng.uniform(0.0, spec.side)};
    return Instance(name, depot, std::move(customers), spec.capacity);
}

inline Route route_of(std::initializer_list<std::pair<NodeId, Quantity>> visits) {
    Route r;
    for (const auto &[c, q] : visits) {
        r.visits.push_back({c, q, false});
    }
    return r;
}

inline std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void spit(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string &tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("sdvrp-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;

    const std::filesystem::path &path() const { return path_; }
    std::string operator/(const std::string &name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace sdvrp::testing

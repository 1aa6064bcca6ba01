#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "sdvrp/errors.hpp"
#include "sdvrp/tsplib.hpp"

using namespace sdvrp;

namespace {

const char *kMinimal = R"(NAME : tiny
TYPE : CVRP
DIMENSION : 3
CAPACITY : 100
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 0 0
2 10 0
3 0 20
DEMAND_SECTION
1 0
2 60
3 90
DEPOT_SECTION
1
-1
EOF
)";

std::size_t error_line(const std::string &text) {
    try {
        (void)tsplib::parse_instance_text(text);
    } catch (const ParseError &e) {
        return e.line();
    }
    ADD_FAILURE() << "expected a parse error";
    return 0;
}

std::string replace(std::string text, const std::string &from, const std::string &to) {
    const auto at = text.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    return text.replace(at, from.size(), to);
}

Solution random_solution(Rng &rng) {
    Solution s;
    const auto routes = rng.below(5);
    for (std::uint64_t r = 0; r < routes; ++r) {
        Route route;
        const auto len = 1 + rng.below(6);
        for (std::uint64_t k = 0; k < len; ++k) {
            route.visits.push_back({static_cast<NodeId>(1 + rng.below(40)), rng.between(1, 500), rng.below(4) == 0});
        }
        s.routes.push_back(std::move(route));
    }
    s.cost = rng.uniform(0.0, 1e5);
    return s;
}

}  // namespace

TEST(ParseInstance, MinimalFile) {
    const Instance inst = tsplib::parse_instance_text(kMinimal);
    EXPECT_EQ(inst.name(), "tiny");
    EXPECT_EQ(inst.size(), 2);
    EXPECT_EQ(inst.capacity(), 100);
    EXPECT_EQ(inst.customer(1).demand, 60);
    EXPECT_EQ(inst.customer(2).demand, 90);
    EXPECT_EQ(inst.customer(2).coord, (Point{0, 20}));
    EXPECT_EQ(inst.depot(), (Point{0, 0}));
}

TEST(ParseInstance, FractionalDemandNamesTheLine) {
    const std::string text = replace(kMinimal, "2 60", "2 60.5");
    try {
        (void)tsplib::parse_instance_text(text);
        FAIL() << "expected a parse error";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 12u);
        EXPECT_NE(std::string(e.what()).find("line 12"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("60.5"), std::string::npos);
    }
}

TEST(ParseInstance, MissingHeaderFields) {
    EXPECT_THROW((void)tsplib::parse_instance_text(replace(kMinimal, "CAPACITY : 100\n", "")), ParseError);
    // Without DIMENSION the node sections have nothing to check against.
    EXPECT_EQ(error_line(replace(kMinimal, "DIMENSION : 3\n", "")), 6u);
}

TEST(ParseInstance, DuplicateNodeId) {
    EXPECT_EQ(error_line(replace(kMinimal, "3 0 20", "2 0 20")), 9u);
    EXPECT_EQ(error_line(replace(kMinimal, "3 90", "2 90")), 13u);
}

TEST(ParseInstance, UnknownSection) {
    EXPECT_EQ(error_line(replace(kMinimal, "DEPOT_SECTION", "EDGE_WEIGHT_SECTION")), 14u);
}

TEST(ParseInstance, SectionsMustAgreeWithDimension) {
    EXPECT_THROW((void)tsplib::parse_instance_text(replace(kMinimal, "DIMENSION : 3", "DIMENSION : 4")), ParseError);
    EXPECT_THROW((void)tsplib::parse_instance_text(replace(kMinimal, "DIMENSION : 3", "DIMENSION : 2")), ParseError);
    EXPECT_THROW((void)tsplib::parse_instance_text(replace(kMinimal, "3 90\n", "")), ParseError);
}

TEST(ParseInstance, OtherRejections) {
    EXPECT_THROW((void)tsplib::parse_instance_text(replace(kMinimal, "EUC_2D", "GEO")), ParseError);
    EXPECT_THROW((void)tsplib::parse_instance_text(replace(kMinimal, "TYPE : CVRP", "TYPE : TSP")), ParseError);
    EXPECT_THROW((void)tsplib::parse_instance_text(replace(kMinimal, "1 0\n2 60", "1 5\n2 60")), ParseError);
    EXPECT_THROW((void)tsplib::parse_instance_text(replace(kMinimal, "2 60", "2 0")), ParseError);
    EXPECT_THROW((void)tsplib::parse_instance_text(replace(kMinimal, "2 60", "2 -60")), ParseError);
    EXPECT_THROW((void)tsplib::parse_instance_text(replace(kMinimal, "1\n-1", "1 2\n-1")), ParseError);
}

TEST(ParseInstance, DepotSectionTakesPrecedence) {
    std::string text = replace(kMinimal, "1\n-1", "3\n-1");
    text = replace(text, "1 0\n2 60\n3 90", "1 25\n2 60\n3 0");
    const Instance inst = tsplib::parse_instance_text(text);
    EXPECT_EQ(inst.depot(), (Point{0, 20}));
    ASSERT_EQ(inst.size(), 2);
    EXPECT_EQ(inst.customer(1).demand, 25);
    EXPECT_EQ(inst.customer(1).coord, (Point{0, 0}));
    EXPECT_EQ(inst.customer(2).demand, 60);
}

TEST(ParseInstance, NodeOneIsDepotWithoutDepotSection) {
    const std::string text = replace(kMinimal, "DEPOT_SECTION\n1\n-1\n", "");
    EXPECT_EQ(tsplib::parse_instance_text(text), tsplib::parse_instance_text(kMinimal));
}

TEST(ParseInstance, CrlfAndUnknownKeys) {
    std::string text = replace(kMinimal, "TYPE : CVRP\n", "TYPE : CVRP\nVEHICLES : 4\nCOMMENT : whatever\n");
    std::string crlf;
    for (const char c : text) {
        if (c == '\n') {
            crlf += '\r';
        }
        crlf += c;
    }
    std::vector<std::pair<std::size_t, std::string>> warnings;
    const Instance inst = tsplib::parse_instance_text(
        crlf, [&](std::size_t line, std::string_view msg) { warnings.emplace_back(line, std::string(msg)); });
    EXPECT_EQ(inst, tsplib::parse_instance_text(kMinimal));
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_EQ(warnings[0].first, 3u);
    EXPECT_NE(warnings[0].second.find("VEHICLES"), std::string::npos);
}

TEST(WriteInstance, SingleCustomer) {
    const Instance inst("one", {0.5, -2}, {{1, {3, 4}, 7}}, 10);
    const std::string text = tsplib::write_instance(inst);
    EXPECT_NE(text.find("DIMENSION : 2\n"), std::string::npos);
    const auto demand_at = text.find("DEMAND_SECTION\n");
    const auto depot_at = text.find("DEPOT_SECTION\n");
    ASSERT_NE(demand_at, std::string::npos);
    ASSERT_NE(depot_at, std::string::npos);
    EXPECT_EQ(text.substr(demand_at, depot_at - demand_at), "DEMAND_SECTION\n1 0\n2 7\n");
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(WriteInstance, DistinctInstancesGiveDistinctText) {
    const Instance a("x", {0, 0}, {{1, {3, 4}, 7}}, 10);
    const Instance b("x", {0, 0}, {{1, {3, 4}, 8}}, 10);
    EXPECT_NE(tsplib::write_instance(a), tsplib::write_instance(b));
}

TEST(WriteInstance, RoundTripsRandomInstances) {
    Rng rng(21);
    for (int t = 0; t < 200; ++t) {
        sdvrp::testing::RandomSpec spec;
        spec.n = 1 + static_cast<int>(rng.below(60));
        spec.capacity = rng.between(1, 10000);
        spec.demand_max = rng.between(1, 20000);
        spec.side = rng.uniform(1e-3, 1e6);
        const Instance inst = sdvrp::testing::random_instance(rng, spec, "r" + std::to_string(t));
        ASSERT_EQ(tsplib::parse_instance_text(tsplib::write_instance(inst)), inst) << "trial " << t;
    }
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(tsplib::format_double(0.1), "0.1");
    EXPECT_EQ(tsplib::format_double(12.0), "12");
    const double awkward = 0.1 + 0.2;
    EXPECT_EQ(std::stod(tsplib::format_double(awkward)), awkward);
}

TEST(Solution, OneRouteLayout) {
    const Solution s{{sdvrp::testing::route_of({{3, 20}, {1, 80}})}, 42.5};
    EXPECT_EQ(tsplib::write_solution(s), "ROUTE 1 : 3(20) 1(80)\nCOST 42.5\n");
}

TEST(Solution, RevisitFlagIsWritten) {
    Solution s{{sdvrp::testing::route_of({{3, 20}, {1, 80}, {3, 5}})}, 1};
    s.routes[0].visits[2].revisit = true;
    EXPECT_EQ(tsplib::write_solution(s), "ROUTE 1 : 3(20) 1(80) 3(5)*\nCOST 1\n");
}

TEST(Solution, RejectsBadQuantitiesAndPairs) {
    EXPECT_THROW((void)tsplib::parse_solution_text("ROUTE 1 : 3(0)\nCOST 1\n"), ParseError);
    EXPECT_THROW((void)tsplib::parse_solution_text("ROUTE 1 : 3(-4)\nCOST 1\n"), ParseError);
    EXPECT_THROW((void)tsplib::parse_solution_text("ROUTE 1 : 3(4\nCOST 1\n"), ParseError);
    EXPECT_THROW((void)tsplib::parse_solution_text("ROUTE 1 : 3\nCOST 1\n"), ParseError);
    EXPECT_THROW((void)tsplib::parse_solution_text("ROUTE 1 : x(4)\nCOST 1\n"), ParseError);
    EXPECT_THROW((void)tsplib::parse_solution_text("ROUTE 1 : 3(4)\n"), ParseError);
    EXPECT_THROW((void)tsplib::parse_solution_text("ROUTE 2 : 3(4)\nCOST 1\n"), ParseError);
    EXPECT_THROW((void)tsplib::parse_solution_text("COST 1\nROUTE 1 : 3(4)\n"), ParseError);
}

TEST(Solution, ZeroQuantityNamesLine) {
    try {
        (void)tsplib::parse_solution_text("ROUTE 1 : 3(4)\nROUTE 2 : 5(0)\nCOST 1\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Solution, EmptySolutionAndEmptyRoute) {
    EXPECT_EQ(tsplib::parse_solution_text("COST 0\n"), Solution{});
    const Solution s{{Route{}}, 0};
    EXPECT_EQ(tsplib::parse_solution_text(tsplib::write_solution(s)), s);
}

TEST(Solution, RoundTripsRandomSolutions) {
    Rng rng(22);
    for (int t = 0; t < 200; ++t) {
        const Solution s = random_solution(rng);
        ASSERT_EQ(tsplib::parse_solution_text(tsplib::write_solution(s)), s) << "trial " << t;
    }
}

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sdvrp/model.hpp"

using namespace sdvrp;
using sdvrp::testing::route_of;

namespace {

Instance two_customers() {
    return Instance("t", {0, 0}, {{1, {3, 4}, 60}, {2, {3, 0}, 30}}, 100);
}

Solution with_cost(const Instance &inst, std::vector<Route> routes) {
    Solution s{std::move(routes), 0.0};
    s.cost = solution_cost(inst, s);
    return s;
}

}  // namespace

TEST(Distance, ThreeFourFive) {
    const Instance inst = two_customers();
    EXPECT_DOUBLE_EQ(inst.distance(kDepot, 1), 5.0);
    EXPECT_DOUBLE_EQ(inst.distance(1, kDepot), 5.0);
}

TEST(Distance, SameNodeIsZero) {
    const Instance inst = two_customers();
    EXPECT_EQ(inst.distance(2, 2), 0.0);
    EXPECT_EQ(inst.distance(kDepot, kDepot), 0.0);
}

TEST(Distance, OffsetPoints) {
    EXPECT_DOUBLE_EQ(euclidean({1, 1}, {4, 5}), 5.0);
}

TEST(Distance, UnknownIdThrows) {
    const Instance inst = two_customers();
    EXPECT_THROW((void)inst.distance(0, 3), std::invalid_argument);
    EXPECT_THROW((void)inst.distance(-1, 1), std::invalid_argument);
}

TEST(Distance, MetricOnRandomPoints) {
    Rng rng(3);
    std::vector<Customer> cs;
    for (NodeId i = 1; i <= 30; ++i) {
        cs.push_back({i, {rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)}, 1});
    }
    const Instance inst("m", {rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)}, cs, 10);
    for (int t = 0; t < 5000; ++t) {
        const auto a = static_cast<NodeId>(rng.below(31));
        const auto b = static_cast<NodeId>(rng.below(31));
        const auto c = static_cast<NodeId>(rng.below(31));
        ASSERT_EQ(inst.distance(a, b), inst.distance(b, a));
        ASSERT_LE(inst.distance(a, c), inst.distance(a, b) + inst.distance(b, c) + 1e-9);
        ASSERT_GE(inst.distance(a, b), 0.0);
    }
}

TEST(Instance, RejectsBadIds) {
    EXPECT_THROW(Instance("x", {0, 0}, {{1, {0, 0}, 1}, {1, {1, 1}, 1}}, 10), std::invalid_argument);
    EXPECT_THROW(Instance("x", {0, 0}, {{2, {0, 0}, 1}}, 10), std::invalid_argument);
    EXPECT_THROW(Instance("x", {0, 0}, {{0, {0, 0}, 1}}, 10), std::invalid_argument);
}

TEST(Instance, RejectsNonPositiveDemandAndCapacity) {
    EXPECT_THROW(Instance("x", {0, 0}, {{1, {0, 0}, 0}}, 10), std::invalid_argument);
    EXPECT_THROW(Instance("x", {0, 0}, {{1, {0, 0}, 5}}, 0), std::invalid_argument);
}

TEST(Instance, CustomersSortedById) {
    const Instance inst("x", {0, 0}, {{2, {2, 2}, 7}, {1, {1, 1}, 5}}, 10);
    EXPECT_EQ(inst.customer(1).demand, 5);
    EXPECT_EQ(inst.customer(2).demand, 7);
    EXPECT_EQ(inst.total_demand(), 12);
    // Demand above Q is a legal SDVRP instance.
    EXPECT_NO_THROW(Instance("big", {0, 0}, {{1, {1, 1}, 50}}, 10));
}

TEST(SolutionCost, OutAndBack) {
    const Instance inst = two_customers();
    const Solution s{{route_of({{1, 60}})}, 0};
    EXPECT_DOUBLE_EQ(solution_cost(inst, s), 10.0);
}

TEST(SolutionCost, EmptySolutionAndEmptyRoutes) {
    const Instance inst = two_customers();
    EXPECT_EQ(solution_cost(inst, Solution{}), 0.0);
    EXPECT_EQ(solution_cost(inst, Solution{{Route{}, Route{}}, 0}), 0.0);
}

TEST(SolutionCost, HandSummedLegs) {
    const Instance inst = two_customers();
    const Solution s{{route_of({{1, 60}, {2, 30}})}, 0};
    EXPECT_DOUBLE_EQ(solution_cost(inst, s), 12.0);
}

TEST(SolutionCost, UnknownIdThrows) {
    const Instance inst = two_customers();
    EXPECT_THROW((void)solution_cost(inst, Solution{{route_of({{9, 1}})}, 0}), std::invalid_argument);
}

TEST(SolutionCost, ReversingARouteKeepsCost) {
    Rng rng(4);
    for (int t = 0; t < 200; ++t) {
        sdvrp::testing::RandomSpec spec;
        spec.n = 1 + static_cast<int>(rng.below(12));
        const Instance inst = sdvrp::testing::random_instance(rng, spec);
        Route r;
        for (NodeId c = 1; c <= inst.size(); ++c) {
            r.visits.push_back({c, 1, false});
        }
        rng.shuffle(std::span<Visit>(r.visits));
        Route rev = r;
        std::reverse(rev.visits.begin(), rev.visits.end());
        ASSERT_TRUE(costs_equal(route_cost(inst, r), route_cost(inst, rev)));
    }
}

TEST(CostsEqual, RelativeTolerance) {
    EXPECT_TRUE(costs_equal(1000.0, 1000.0 * (1 + 5e-10)));
    EXPECT_FALSE(costs_equal(1000.0, 1000.0 * (1 + 5e-9)));
    EXPECT_TRUE(costs_equal(0.0, 0.0));
}

TEST(Validate, FeasibleSolutionIsClean) {
    const Instance inst = two_customers();
    const auto s = with_cost(inst, {route_of({{1, 60}, {2, 30}})});
    EXPECT_TRUE(validate_solution(inst, s, ValidationMode::cvrp).ok());
    EXPECT_TRUE(validate_solution(inst, s, ValidationMode::sdvrp).ok());
}

TEST(Validate, CapacityOverByOneNamesTheRoute) {
    const Instance inst("c", {0, 0}, {{1, {1, 0}, 60}, {2, {2, 0}, 41}}, 100);
    const auto s = with_cost(inst, {route_of({{1, 60}, {2, 41}})});
    const auto report = validate_solution(inst, s, ValidationMode::sdvrp);
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].kind, Violation::Kind::capacity_exceeded);
    EXPECT_EQ(report.violations[0].route, 0);
    EXPECT_EQ(report.violations[0].amount, 1.0);
}

TEST(Validate, UnderDeliveryReportsShortfall) {
    const Instance inst = two_customers();
    const auto s = with_cost(inst, {route_of({{1, 50}, {2, 30}})});
    const auto report = validate_solution(inst, s, ValidationMode::sdvrp);
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].kind, Violation::Kind::under_delivered);
    EXPECT_EQ(report.violations[0].customer, 1);
    EXPECT_EQ(report.violations[0].amount, 10.0);
}

TEST(Validate, OverDeliveryAndBadQuantities) {
    const Instance inst = two_customers();
    const auto s = with_cost(inst, {route_of({{1, 70}, {2, 0}}), route_of({{2, 30}})});
    const auto report = validate_solution(inst, s, ValidationMode::sdvrp);
    EXPECT_EQ(report.count(Violation::Kind::over_delivered), 1u);
    EXPECT_EQ(report.count(Violation::Kind::nonpositive_quantity), 1u);
    EXPECT_EQ(report.violations.size(), 2u);
}

TEST(Validate, UnknownCustomerSkipsCostCheck) {
    const Instance inst = two_customers();
    const Solution s{{route_of({{1, 60}, {2, 30}, {7, 1}})}, 123.0};
    const auto report = validate_solution(inst, s, ValidationMode::sdvrp);
    EXPECT_EQ(report.count(Violation::Kind::unknown_customer), 1u);
    EXPECT_EQ(report.count(Violation::Kind::cost_mismatch), 0u);
}

TEST(Validate, StaleCostIsReported) {
    const Instance inst = two_customers();
    Solution s = with_cost(inst, {route_of({{1, 60}, {2, 30}})});
    s.cost += 1e-3;
    const auto report = validate_solution(inst, s, ValidationMode::cvrp);
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].kind, Violation::Kind::cost_mismatch);
}

TEST(Validate, SplitAcrossRoutesDependsOnMode) {
    const Instance inst = two_customers();
    const auto s = with_cost(inst, {route_of({{1, 30}}), route_of({{1, 30}, {2, 30}})});
    EXPECT_TRUE(validate_solution(inst, s, ValidationMode::sdvrp).ok());
    const auto report = validate_solution(inst, s, ValidationMode::cvrp);
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].kind, Violation::Kind::visited_more_than_once);
}

TEST(Validate, RepeatInsideRouteNeedsRevisitFlag) {
    const Instance inst = two_customers();
    auto s = with_cost(inst, {route_of({{1, 30}, {2, 30}, {1, 30}})});
    auto report = validate_solution(inst, s, ValidationMode::sdvrp);
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].kind, Violation::Kind::repeated_in_route);

    s.routes[0].visits[2].revisit = true;
    EXPECT_TRUE(validate_solution(inst, s, ValidationMode::sdvrp).ok());
    EXPECT_EQ(validate_solution(inst, s, ValidationMode::cvrp).count(Violation::Kind::repeated_in_route), 1u);
}

TEST(Validate, SummaryListsEveryViolation) {
    const Instance inst = two_customers();
    const auto s = with_cost(inst, {route_of({{1, 50}})});
    const auto report = validate_solution(inst, s, ValidationMode::sdvrp);
    EXPECT_EQ(report.violations.size(), 2u);
    EXPECT_NE(report.summary().find("customer 1"), std::string::npos);
    EXPECT_NE(report.summary().find("customer 2"), std::string::npos);
}

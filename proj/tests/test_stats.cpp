#include <doctest.h>

#include <cmath>
#include <limits>

#include "bait/rng.hpp"
#include "bait/stats.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}

TEST_CASE("t score on the printed example") {
    const std::vector<double> e_i = {0.6, 0.8, 0.5};
    const std::vector<double> e_j = {0.5, 0.6, 0.5};  // diffs 0.1, 0.2, 0.0
    const double t = bait::t_score(e_i, e_j);
    CHECK(std::abs(t - std::sqrt(3.0)) < 1e-9);
    CHECK(t < bait::kTScoreThreshold);  // 1.732 is not significant at 2.776
}

TEST_CASE("identical metrics score zero") {
    const std::vector<double> e = {0.3, 0.4, 0.5, 0.6};
    CHECK(bait::t_score(e, e) == 0.0);
}

TEST_CASE("degenerate variance maps to the signed infinity sentinel") {
    const std::vector<double> hi = {1.0, 2.0, 3.0};
    const std::vector<double> lo = {0.5, 1.5, 2.5};  // constant +0.5
    CHECK(bait::t_score(hi, lo) == kInf);
    CHECK(bait::t_score(lo, hi) == -kInf);
}

TEST_CASE("t score is antisymmetric") {
    const std::vector<double> a = {0.61, 0.72, 0.55, 0.68};
    const std::vector<double> b = {0.58, 0.74, 0.51, 0.66};
    CHECK(bait::t_score(a, b) == -bait::t_score(b, a));
}

TEST_CASE("penalty increments are 1/z") {
    // Two strategies, one budget, a decisive win for the first.
    std::vector<std::vector<std::vector<double>>> metrics = {
        {{0.9, 0.91, 0.9, 0.89, 0.9}},
        {{0.5, 0.52, 0.49, 0.5, 0.51}},
    };
    const auto pm = bait::pairwise_penalty({"a", "b"}, metrics);
    CHECK(pm.penalty(0, 1) == doctest::Approx(1.0));
    CHECK(pm.penalty(1, 0) == 0.0);
    CHECK(pm.penalty(0, 0) == 0.0);
    CHECK(pm.penalty(1, 1) == 0.0);
    CHECK(pm.column_means[1] == doctest::Approx(1.0));

    // Three budgets, significant at exactly one.
    std::vector<std::vector<std::vector<double>>> three = {
        {{0.5, 0.5, 0.5}, {0.9, 0.9, 0.9}, {0.7, 0.5, 0.9}},
        {{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, {0.6, 0.6, 0.6}},
    };
    const auto pm3 = bait::pairwise_penalty({"a", "b"}, three);
    CHECK(pm3.penalty(0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(pm3.penalty(1, 0) == 0.0);
}

TEST_CASE("no significant differences leave the matrix empty") {
    std::vector<std::vector<std::vector<double>>> metrics = {
        {{0.5, 0.9, 0.1}},
        {{0.4, 0.95, 0.15}},
    };
    const auto pm = bait::pairwise_penalty({"a", "b"}, metrics);
    CHECK(pm.penalty.norm() == 0.0);
}

TEST_CASE("penalty entries stay in range on random tables") {
    bait::Rng rng(3);
    std::vector<std::string> names = {"s1", "s2", "s3"};
    std::vector<std::vector<std::vector<double>>> metrics(3);
    for (auto& table : metrics) {
        table.resize(4);
        for (auto& budget : table) {
            budget.resize(5);
            for (auto& v : budget) v = rng.next_double();
        }
    }
    const auto pm = bait::pairwise_penalty(names, metrics);
    for (int i = 0; i < 3; ++i) {
        CHECK(pm.penalty(i, i) == 0.0);
        for (int j = 0; j < 3; ++j) {
            CHECK(pm.penalty(i, j) >= 0.0);
            CHECK(pm.penalty(i, j) <= 1.0 + 1e-12);
        }
    }
}

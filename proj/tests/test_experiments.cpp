#include "complements/experiments.hpp"
#include "complements/instances.hpp"

#include <gtest/gtest.h>

using namespace complements;

namespace {

const BoundCheckResult* find(const std::vector<BoundCheckResult>& checks, const std::string& name) {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST(Report, TwoLevel) {
    const auto r = report(make_two_level(Rational(10)));
    EXPECT_EQ(r.levels, 2u);
    EXPECT_EQ(r.opt_welfare, Rational(11));
    EXPECT_EQ(r.best.revenue, Rational(10));
    EXPECT_EQ(r.worst.welfare, Rational(2));
    EXPECT_EQ(r.ratios.best_revenue_over_worst_revenue, Rational(5));
    EXPECT_EQ(r.ratios.opt_welfare_over_best_revenue, Rational(11, 10));
    EXPECT_EQ(r.equilibria.size(), 2u);
}

TEST(Report, ExpPosRevenueRatioNearFour) {
    const auto r = report(make_exp_pos(3, Rational(1, 100)));
    const Rational ratio = r.ratios.monopoly_revenue_over_best_revenue;
    EXPECT_EQ(ratio, (pow(Rational(199, 100), 2) - Rational(1, 100)) / (Rational(1) - pow(Rational(1, 100), 3)));
    EXPECT_LE(abs(ratio - Rational(4)), Rational(1, 10));
}

TEST(Report, SingleLevelRatiosAreOne) {
    const auto r = report(DemandCurve({Rational(1)}, {Rational(1)}));
    EXPECT_EQ(r.ratios.opt_welfare_over_best_revenue, Rational(1));
    EXPECT_EQ(r.ratios.monopoly_revenue_over_best_revenue, Rational(1));
    EXPECT_EQ(r.ratios.best_welfare_over_worst_welfare, Rational(1));
    EXPECT_EQ(r.ratios.best_revenue_over_worst_revenue, Rational(1));
    EXPECT_FALSE(r.w_ratio.has_value());
}

TEST(VerifyBounds, TwoLevelCournotIsTight) {
    const auto checks = verify_bounds(make_two_level(Rational(10)));
    const auto* cournot = find(checks, "cournot");
    ASSERT_NE(cournot, nullptr);
    EXPECT_TRUE(cournot->holds);
    EXPECT_EQ(cournot->lhs, Rational(1));
    EXPECT_EQ(cournot->rhs, Rational(1));
    EXPECT_TRUE(all_asserted_hold(checks));
    const auto* data = find(checks, "sqrt_d_ratio_sq");
    ASSERT_NE(data, nullptr);
    EXPECT_FALSE(data->asserted);
}

TEST(VerifyBounds, ExpPosWelfareBoundNearTight) {
    const auto checks = verify_bounds(make_exp_pos(4, Rational(1, 100)));
    const auto* pos = find(checks, "pos_welfare");
    ASSERT_NE(pos, nullptr);
    EXPECT_TRUE(pos->holds);
    EXPECT_GE(pos->lhs / pos->rhs, Rational(9, 10));
}

TEST(VerifyBounds, FlagsViolations) {
    const auto r = check_le("x", Rational(3), Rational(2));
    EXPECT_FALSE(r.holds);
    EXPECT_FALSE(all_asserted_hold({r}));
    BoundCheckResult data = r;
    data.asserted = false;
    EXPECT_TRUE(all_asserted_hold({data}));
}

TEST(VerifyBounds, RandomInstancesHold) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto c = random_instance(1 + seed % 6, seed);
        for (const auto& check : verify_bounds(c))
            EXPECT_TRUE(!check.asserted || check.holds) << check.name << " seed " << seed << " " << check.witness;
    }
}

TEST(BruteForce, TwoLevelLevelTwo) {
    const auto c = make_two_level(Rational(10));
    const auto levels = brute_force_equilibria(c, 1000);
    ASSERT_EQ(levels.size(), 2u);
    // x = k/1000 in [1/9, 8/9]  <=>  112 <= k <= 888
    const auto& lvl2 = levels[1].grid_indices;
    ASSERT_FALSE(lvl2.empty());
    EXPECT_EQ(lvl2.front(), 112u);
    EXPECT_EQ(lvl2.back(), 888u);
    EXPECT_EQ(lvl2.size(), 777u);
    EXPECT_THROW(brute_force_equilibria(c, 99), std::invalid_argument);
}

TEST(BruteForce, EmptyLevelHasNoGridPoints) {
    const auto c = make_exp_pos(3, Rational(1, 100));
    const auto levels = brute_force_equilibria(c, 100);
    EXPECT_FALSE(levels[0].grid_indices.empty());
    EXPECT_TRUE(levels[1].grid_indices.empty());
    EXPECT_TRUE(levels[2].grid_indices.empty());
}

TEST(BruteForce, GeometricMidpointsPresent) {
    const auto c = make_geometric(3, Rational(1, 10));
    for (const auto& level : brute_force_equilibria(c, 1000)) {
        bool mid = false;
        for (auto k : level.grid_indices) mid = mid || k == 500;
        EXPECT_TRUE(mid) << level.level;
    }
}

TEST(BruteForce, AgreesWithClosedForm) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto c = random_instance(1 + seed % 5, seed);
        const auto scan = brute_force_equilibria(c, 200);
        for (const auto& level : scan) {
            const auto interval = equilibrium_interval(c, level.level);
            const Rational& v = c.value(level.level);
            std::vector<std::uint64_t> expected;
            for (std::uint64_t k = 0; k <= 200; ++k)
                if (interval.contains(v * Rational(static_cast<long>(k), 200L))) expected.push_back(k);
            EXPECT_EQ(level.grid_indices, expected) << "seed " << seed << " level " << level.level;
        }
    }
}

TEST(LemmaChecks, TwoLevelStepIsVacuous) {
    const auto checks = lemma_checks(make_two_level(Rational(10)), 5, 1);
    for (const auto& c : checks) {
        EXPECT_TRUE(c.holds) << c.name << " " << c.witness;
        if (c.name == "sqrt_step") {
            EXPECT_EQ(c.witness.find("v 2 ->"), std::string::npos);
        }
    }
    EXPECT_THROW(lemma_checks(make_two_level(Rational(10)), 0, 1), std::invalid_argument);
}

TEST(LemmaChecks, GeometricSymmetricEquilibria) {
    const auto c = make_geometric(4, Rational(1, 10));
    std::size_t log_rows = 0;
    for (const auto& check : lemma_checks(c, 10, 3)) {
        EXPECT_TRUE(check.holds) << check.name << " " << check.witness;
        if (check.name == "welfare_revenue_log") ++log_rows;
    }
    EXPECT_EQ(log_rows, 4u);
}

TEST(LemmaChecks, RandomInstancesHold) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto c = random_instance(1 + seed % 6, seed);
        for (const auto& check : lemma_checks(c, 10, seed))
            EXPECT_TRUE(check.holds) << check.name << " seed " << seed << " " << check.witness;
    }
}

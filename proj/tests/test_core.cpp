#include "complements/core.hpp"
#include "complements/instances.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace complements;

namespace {

DemandCurve two_level(long d2) { return DemandCurve({Rational(2), Rational(1)}, {Rational(1), Rational(d2)}); }

std::vector<Rational> rs(std::initializer_list<Rational> xs) { return xs; }

}  // namespace

TEST(DemandCurve, RejectsInvariantViolations) {
    EXPECT_THROW(DemandCurve({}, {}), InvalidCurve);
    EXPECT_THROW(DemandCurve(rs({1, 1}), rs({1, 2})), InvalidCurve);
    EXPECT_THROW(DemandCurve(rs({1, 2}), rs({1, 2})), InvalidCurve);
    EXPECT_THROW(DemandCurve(rs({2, 1}), rs({2, 2})), InvalidCurve);
    EXPECT_THROW(DemandCurve(rs({2, 1}), rs({0, 2})), InvalidCurve);
    EXPECT_THROW(DemandCurve(rs({2, 0}), rs({1, 2})), InvalidCurve);
    EXPECT_THROW(DemandCurve(rs({2, 1}), rs({1})), InvalidCurve);
    EXPECT_NO_THROW(DemandCurve(rs({1}), rs({1})));
}

TEST(DemandCurve, DerivedRatios) {
    const auto c = two_level(10);
    EXPECT_EQ(c.total_demand_ratio(), Rational(10));
    EXPECT_EQ(*c.w_ratio(), Rational(10, 9));
    EXPECT_FALSE(DemandCurve(rs({1}), rs({1})).w_ratio().has_value());
}

TEST(Demand, UsesWeakConvention) {
    const auto c = two_level(10);
    EXPECT_EQ(demand(c, Rational(1)), Rational(10));
    EXPECT_EQ(demand(c, Rational(3)), Rational(0));
    EXPECT_EQ(demand(c, Rational(3, 2)), Rational(1));
    EXPECT_EQ(demand(c, Rational(2)), Rational(1));
    EXPECT_EQ(demand(c, Rational(0)), Rational(10));
    EXPECT_THROW(demand(c, Rational(-1)), std::domain_error);
}

TEST(Revenue, Examples) {
    const auto c = two_level(10);
    EXPECT_EQ(total_revenue(c, Rational(1)), Rational(10));
    EXPECT_EQ(total_revenue(c, Rational(0)), Rational(0));
    const DemandCurve geo(rs({1, Rational(1, 10), Rational(1, 100)}), rs({1, 19, 361}));
    EXPECT_EQ(total_revenue(geo, Rational(1, 100)), Rational(361, 100));
    EXPECT_THROW(total_revenue(c, Rational(-1, 2)), std::domain_error);
}

TEST(Welfare, Examples) {
    const auto c = two_level(10);
    EXPECT_EQ(welfare(c, Rational(0)), Rational(11));
    EXPECT_EQ(welfare(c, Rational(2)), Rational(2));
    EXPECT_EQ(welfare(c, Rational(3)), Rational(0));
    EXPECT_EQ(welfare(c, Rational(1)), Rational(11));
    EXPECT_THROW(welfare(c, Rational(-1)), std::domain_error);
}

TEST(BestResponse, Examples) {
    const auto c = two_level(10);
    auto br = best_response(c, Rational(0));
    EXPECT_EQ(br.replies, rs({1}));
    EXPECT_EQ(br.max_revenue, Rational(10));

    br = best_response(c, Rational(1));
    EXPECT_EQ(br.replies, rs({1}));
    EXPECT_EQ(br.max_revenue, Rational(1));

    br = best_response(c, Rational(5));
    EXPECT_EQ(br.replies, rs({0}));
    EXPECT_EQ(br.max_revenue, Rational(0));
    EXPECT_TRUE(br.levels.empty());

    // q = v_1 leaves nothing positive either.
    br = best_response(c, Rational(2));
    EXPECT_EQ(br.replies, rs({0}));
}

TEST(BestResponse, PositiveTieReturnsBothReplies) {
    const auto c = two_level(9);
    // At q = 8/9 the two candidates earn 10/9 and 1, so there is no tie.
    auto br = best_response(c, Rational(8, 9));
    EXPECT_EQ(br.replies, rs({Rational(10, 9)}));
    EXPECT_EQ(br.max_revenue, Rational(10, 9));
    EXPECT_EQ((Rational(1) - Rational(8, 9)) * Rational(9), Rational(1));

    // The tie sits at q = 7/8: (2 - 7/8) * 1 = (1 - 7/8) * 9 = 9/8.
    br = best_response(c, Rational(7, 8));
    EXPECT_EQ(br.replies, rs({Rational(9, 8), Rational(1, 8)}));
    EXPECT_EQ(br.max_revenue, Rational(9, 8));
    EXPECT_EQ(br.levels, (std::vector<std::size_t>{1, 2}));
}

TEST(BestResponse, NegativePriceRejected) {
    EXPECT_THROW(best_response(two_level(10), Rational(-1)), std::domain_error);
}

TEST(IsEquilibrium, Examples) {
    const auto c = two_level(10);
    auto e = is_equilibrium(c, {Rational(1, 2), Rational(1, 2)});
    EXPECT_TRUE(e.equilibrium);
    EXPECT_TRUE(e.non_trivial);
    e = is_equilibrium(c, {Rational(1), Rational(1)});
    EXPECT_TRUE(e.equilibrium);
    EXPECT_TRUE(e.non_trivial);
    EXPECT_FALSE(is_equilibrium(c, {Rational(0), Rational(1)}).equilibrium);
    EXPECT_FALSE(oracle::is_equilibrium(c, Rational(0), Rational(1)));
}

TEST(IsEquilibrium, PricedOutSellersMoveToZero) {
    const auto c = two_level(10);
    // With nothing positive attainable the only best reply is 0.
    EXPECT_FALSE(is_equilibrium(c, {Rational(3), Rational(3)}).equilibrium);
    EXPECT_FALSE(is_equilibrium(c, {Rational(0), Rational(5)}).equilibrium);
}

TEST(EquilibriumInterval, TwoLevelTen) {
    const auto c = two_level(10);
    auto lvl2 = equilibrium_interval(c, 2);
    EXPECT_FALSE(lvl2.empty);
    EXPECT_EQ(lvl2.lo, Rational(1, 9));
    EXPECT_EQ(lvl2.hi, Rational(8, 9));
    auto lvl1 = equilibrium_interval(c, 1);
    EXPECT_FALSE(lvl1.empty);
    EXPECT_EQ(lvl1.lo, Rational(8, 9));
    EXPECT_EQ(lvl1.hi, Rational(10, 9));
    EXPECT_TRUE(lvl1.contains(Rational(1)));
    EXPECT_THROW(equilibrium_interval(c, 0), std::out_of_range);
    EXPECT_THROW(equilibrium_interval(c, 3), std::out_of_range);
}

TEST(EquilibriumInterval, LowPriceBoundIsOneOverDMinusOne) {
    const auto c = two_level(10);
    EXPECT_TRUE(is_equilibrium(c, {Rational(1, 9), Rational(8, 9)}).equilibrium);
    EXPECT_FALSE(is_equilibrium(c, {Rational(1, 10), Rational(9, 10)}).equilibrium);
}

TEST(EquilibriumInterval, TwoLevelThree) {
    const auto c = two_level(3);
    auto lvl1 = equilibrium_interval(c, 1);
    EXPECT_EQ(lvl1.lo, Rational(1, 2));
    EXPECT_EQ(lvl1.hi, Rational(3, 2));
    auto lvl2 = equilibrium_interval(c, 2);
    EXPECT_FALSE(lvl2.empty);
    EXPECT_EQ(lvl2.lo, Rational(1, 2));
    EXPECT_EQ(lvl2.hi, Rational(1, 2));
}

TEST(EquilibriumInterval, GeometricMidpoints) {
    const DemandCurve geo(rs({1, Rational(1, 10), Rational(1, 100)}), rs({1, 19, 361}));
    for (const auto& interval : enumerate_equilibria(geo)) {
        ASSERT_FALSE(interval.empty) << interval.level;
        EXPECT_TRUE(interval.contains(geo.value(interval.level) / Rational(2)));
    }
}

TEST(Equilibria, BestAndWorst) {
    const auto c = two_level(10);
    auto best = best_equilibrium(c);
    EXPECT_EQ(best.total, Rational(1));
    EXPECT_EQ(best.revenue, Rational(10));
    EXPECT_EQ(best.welfare, Rational(11));
    auto worst = worst_equilibrium(c);
    EXPECT_EQ(worst.total, Rational(2));
    EXPECT_EQ(worst.revenue, Rational(2));
    EXPECT_EQ(worst.welfare, Rational(2));

    const DemandCurve single(rs({1}), rs({1}));
    for (const auto& s : {best_equilibrium(single), worst_equilibrium(single)}) {
        EXPECT_EQ(s.total, Rational(1));
        EXPECT_EQ(s.revenue, Rational(1));
        EXPECT_EQ(s.welfare, Rational(1));
    }
}

TEST(Equilibria, ThreeLevelInstanceMatchesOracle) {
    const DemandCurve c(rs({3, 2, 1}), rs({1, Rational(3, 2), 2}));
    const auto eqs = enumerate_equilibria(c);
    EXPECT_FALSE(eqs[0].empty);
    EXPECT_EQ(eqs[0].lo, Rational(0));
    EXPECT_EQ(eqs[0].hi, Rational(3));
    EXPECT_TRUE(eqs[1].empty);
    EXPECT_TRUE(eqs[2].empty);
}

TEST(Monopoly, Examples) {
    EXPECT_EQ(monopoly_prices(two_level(10)).price, Rational(1));
    const DemandCurve brd(rs({1, Rational(1, 4), Rational(1, 300)}), rs({1, 100, 10000}));
    EXPECT_EQ(monopoly_prices(brd).price, Rational(1, 300));
    EXPECT_EQ(monopoly_prices(brd).revenue, Rational(100, 3));
    const DemandCurve single(rs({1}), rs({5}));
    EXPECT_EQ(monopoly_prices(single).price, Rational(1));
    EXPECT_EQ(monopoly_prices(single).revenue, Rational(5));
}

TEST(Monopoly, CanonicalIsSmallestMaximizer) {
    const DemandCurve c(rs({3, 2, 1}), rs({1, Rational(3, 2), 2}));
    const auto m = monopoly_prices(c);
    EXPECT_EQ(m.maximizers, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(m.price, Rational(2));
    EXPECT_EQ(m.revenue, Rational(3));
}

// Property tests over seeded random curves.

class RandomCurves : public ::testing::TestWithParam<std::uint64_t> {
protected:
    DemandCurve curve() const {
        const std::size_t n = 1 + GetParam() % 5;
        return random_instance(n, GetParam());
    }
};

TEST_P(RandomCurves, BestResponseMatchesOracle) {
    const auto c = curve();
    for (const auto& q : oracle::candidates(c, Rational(0), 40)) {
        const auto br = best_response(c, q);
        for (const auto& r : br.replies) EXPECT_TRUE(oracle::is_best_reply(c, r, q)) << "q=" << q << " r=" << r;
        if (br.max_revenue.sign() > 0) {
            for (const auto& r : br.replies) EXPECT_EQ(r * oracle::demand(c, r + q), br.max_revenue);
        }
    }
}

TEST_P(RandomCurves, RepliesLandOnValues) {
    const auto c = curve();
    for (const auto& q : oracle::candidates(c, Rational(0), 40)) {
        const auto br = best_response(c, q);
        if (br.max_revenue.is_zero()) continue;
        for (const auto& r : br.replies) {
            bool on_level = false;
            for (const auto& v : c.values()) on_level = on_level || (r + q == v);
            EXPECT_TRUE(on_level);
        }
    }
}

TEST_P(RandomCurves, ReplyTotalsAreMonotone) {
    const auto c = curve();
    std::vector<Rational> qs;
    for (const auto& q : oracle::candidates(c, Rational(0), 30))
        if (q < c.value(1)) qs.push_back(q);
    for (std::size_t a = 0; a + 1 < qs.size(); ++a) {
        const auto lo = best_response(c, qs[a]);
        const auto hi = best_response(c, qs[a + 1]);
        Rational max_lo = qs[a] + lo.replies.front();
        Rational min_hi = qs[a + 1] + hi.replies.back();
        EXPECT_GE(min_hi, max_lo) << qs[a] << " " << qs[a + 1];
    }
}

TEST_P(RandomCurves, IntervalsAreConvexAndMatchOracle) {
    const auto c = curve();
    const Rational delta(1, 1000000);
    bool any = false;
    for (const auto& interval : enumerate_equilibria(c)) {
        const Rational& v = c.value(interval.level);
        const Rational half = v / Rational(2);
        EXPECT_EQ(interval.contains(half), oracle::is_equilibrium(c, half, half));
        if (interval.empty) continue;
        any = true;
        EXPECT_LE(Rational(0), interval.lo);
        EXPECT_LE(interval.hi, v);
        EXPECT_TRUE(interval.contains(half));
        for (int k = 0; k <= 12; ++k) {
            const Rational x = interval.lo + (interval.hi - interval.lo) * Rational(k, 12);
            EXPECT_TRUE(oracle::is_equilibrium(c, x, v - x)) << "level " << interval.level << " x=" << x;
        }
        if (interval.lo - delta >= Rational(0)) {
            EXPECT_FALSE(oracle::is_equilibrium(c, interval.lo - delta, v - interval.lo + delta));
        }
        if (interval.hi + delta <= v) {
            EXPECT_FALSE(oracle::is_equilibrium(c, interval.hi + delta, v - interval.hi - delta));
        }
    }
    EXPECT_TRUE(any) << "no equilibrium level";
}

TEST_P(RandomCurves, EquilibriumQualityIsMonotoneInTotal) {
    const auto c = curve();
    std::vector<std::size_t> levels;
    for (const auto& interval : enumerate_equilibria(c))
        if (!interval.empty) levels.push_back(interval.level);
    for (std::size_t a = 0; a + 1 < levels.size(); ++a) {
        const Rational& high = c.value(levels[a]);
        const Rational& low = c.value(levels[a + 1]);
        EXPECT_LE(total_revenue(c, high), total_revenue(c, low));
        EXPECT_LE(welfare(c, high), welfare(c, low));
    }
    EXPECT_GE(best_equilibrium(c).total, monopoly_prices(c).price);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomCurves, ::testing::Range<std::uint64_t>(1, 61));

#pragma once

/**
 * @file instances.hpp
 * @brief Constructors for the instance families that witness the game's
 *        bounds, plus seeded random curves for property tests.
 *
 * Families whose guarantees only hold for "small enough" parameters check
 * the equilibrium structure they promise after construction and throw
 * InvalidCurve when it does not hold.
 */

#include "complements/core.hpp"
#include "complements/random.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace complements {

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw InvalidCurve(message);
}

inline bool is_integer_at_least(const Rational& r, long bound) { return r.is_integer() && r >= Rational(bound); }

/// Exact integer square root when `x` is a perfect square.
inline std::optional<mpz_class> exact_sqrt(const mpz_class& x) {
    if (x < 0) return std::nullopt;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), x.get_mpz_t());
    if (root * root != x) return std::nullopt;
    return root;
}

/// Best rational approximation of 1/sqrt(m) with denominator at most `bound`.
inline Rational inverse_sqrt_approximation(unsigned long m, const mpz_class& bound) {
    if (m == 0) throw std::domain_error("inverse_sqrt_approximation: m must be positive");
    if (auto root = exact_sqrt(mpz_class(m))) return Rational(mpz_class(1), *root);

    // y = 1/sqrt(m) = [0; a0, a1, ...] where sqrt(m) = [a0; a1, ...].
    mpz_class a0;
    mpz_sqrt(a0.get_mpz_t(), mpz_class(m).get_mpz_t());
    mpz_class mk = 0, dk = 1, ak = a0;

    // Convergent recurrences: h_n = b_n h_{n-1} + h_{n-2}.
    mpz_class h_prev2 = 0, h_prev = 1, k_prev2 = 1, k_prev = 0;
    auto push = [&](const mpz_class& b) {
        mpz_class h = b * h_prev + h_prev2;
        mpz_class k = b * k_prev + k_prev2;
        h_prev2 = h_prev; h_prev = h;
        k_prev2 = k_prev; k_prev = k;
    };
    push(0);  // b0 = 0 -> 0/1

    auto next_sqrt_term = [&] {
        mk = dk * ak - mk;
        dk = (mpz_class(m) - mk * mk) / dk;
        ak = (a0 + mk) / dk;
    };

    mpz_class term = a0;  // b1
    while (true) {
        const mpz_class k_next = term * k_prev + k_prev2;
        if (k_next > bound) break;
        push(term);
        next_sqrt_term();
        term = ak;
    }

    const Rational convergent(h_prev, k_prev);
    const mpz_class t = (bound - k_prev2) / k_prev;
    if (t < 1) return convergent;
    const Rational semi(t * h_prev + h_prev2, t * k_prev + k_prev2);

    // Pick whichever lies closer to y; they straddle y.
    const Rational inv_m(mpz_class(1), mpz_class(m));
    const Rational mid = (convergent + semi) / Rational(2);
    const bool convergent_below = convergent * convergent < inv_m;
    const bool y_below_mid = inv_m < mid * mid;
    return convergent_below == y_below_mid ? convergent : semi;
}

}  // namespace detail

/// v = (2, 1), d = (1, D).
inline DemandCurve make_two_level(const Rational& total_demand) {
    detail::require(total_demand > Rational(2), "two-level family needs D > 2, got " + total_demand.str());
    return DemandCurve({Rational(2), Rational(1)}, {Rational(1), total_demand});
}

/// v = (1, eps), d = (1, D) with eps * D > 2.
inline DemandCurve make_two_level_eps(const Rational& eps, const Rational& total_demand) {
    detail::require(eps > Rational(0) && eps < Rational(1), "two-level-eps family needs 0 < eps < 1, got " + eps.str());
    detail::require(eps * total_demand > Rational(2),
                    "two-level-eps family needs eps * D > 2, got " + (eps * total_demand).str());
    return DemandCurve({Rational(1), eps}, {Rational(1), total_demand});
}

/// v = (1, 1/4, 1/(3 sqrt D)), d = (1, sqrt D, D) for perfect-square D >= 2500.
inline DemandCurve make_brd3(const Rational& total_demand) {
    detail::require(detail::is_integer_at_least(total_demand, 2500),
                    "brd3 family needs an integer D >= 2500, got " + total_demand.str());
    auto root_opt = detail::exact_sqrt(total_demand.numerator());
    detail::require(root_opt.has_value(), "brd3 family needs a perfect-square D, got " + total_demand.str());
    const Rational root(*root_opt);

    DemandCurve curve({Rational(1), Rational(1, 4), Rational(1) / (Rational(3) * root)},
                      {Rational(1), root, total_demand});

    const auto& v = curve.values();
    const auto& d = curve.demands();
    auto monopoly = monopoly_prices(curve);
    detail::require(monopoly.maximizers == std::vector<std::size_t>{3}, "brd3: monopoly price is not v3");
    detail::require(bool(is_equilibrium(curve, {v[1] / Rational(2), v[1] / Rational(2)})),
                    "brd3: (v2/2, v2/2) is not an equilibrium");
    // Reply to q <= v3 landing on v1 is final.
    detail::require(Rational(1) - v[2] > v[1], "brd3: 1 - v3 must exceed v2");
    // Reply landing on v2 leaves the low seller with at most v3 d2, below 1 - v2.
    detail::require(v[2] * d[1] < Rational(1) - v[1], "brd3: v3 d2 must be below 1 - v2");
    // Reply landing on v3 needs q below the break-even price, which forces another move.
    const Rational break_even = (v[2] * d[2] - v[1] * d[1]) / (d[2] - d[1]);
    detail::require(break_even < Rational(1) / (Rational(6) * root), "brd3: break-even price too high");
    const Rational after_jump = root / Rational(4) - Rational(1, 3);
    detail::require(after_jump > root / Rational(6) && after_jump > Rational(1), "brd3: D too small for escape");
    return curve;
}

/// v_i = eps^(i-1), d_i = ((2 - eps)/eps)^(i-1). Every (v_i/2, v_i/2) is an equilibrium.
inline DemandCurve make_geometric(std::size_t n, const Rational& eps) {
    detail::require(n >= 2, "geometric family needs n >= 2");
    detail::require(eps > Rational(0) && eps <= Rational(1, 10),
                    "geometric family needs 0 < eps <= 1/10, got " + eps.str());
    const Rational ratio = (Rational(2) - eps) / eps;
    std::vector<Rational> values, demands;
    for (std::size_t i = 0; i < n; ++i) {
        values.push_back(pow(eps, static_cast<unsigned>(i)));
        demands.push_back(pow(ratio, static_cast<unsigned>(i)));
    }
    DemandCurve curve(std::move(values), std::move(demands));
    for (std::size_t i = 1; i <= n; ++i) {
        const Rational half = curve.value(i) / Rational(2);
        detail::require(bool(is_equilibrium(curve, {half, half})),
                        "geometric: (v" + std::to_string(i) + "/2, v" + std::to_string(i) + "/2) is not an equilibrium");
    }
    return curve;
}

/// v = (1, 1 - eps), d = (1, 1/(1 - 2 eps)); W = 1/(2 eps).
inline DemandCurve make_slow(const Rational& eps) {
    detail::require(eps > Rational(0) && eps < Rational(1, 2), "slow family needs 0 < eps < 1/2, got " + eps.str());
    return DemandCurve({Rational(1), Rational(1) - eps}, {Rational(1), Rational(1) / (Rational(1) - Rational(2) * eps)});
}

/**
 * n = D levels with v_1 = 1001/1000, v_i ~ 1/sqrt(i - 1) and d_i = i.
 *
 * The irrational values are replaced by best rational approximations with
 * denominator at most `denominator_bound`. Every equilibrium must sit at
 * level <= 3; the check is exact.
 */
inline DemandCurve make_sqrt_pos(unsigned long total_demand, const mpz_class& denominator_bound) {
    detail::require(total_demand >= 4, "sqrt-pos family needs D >= 4");
    detail::require(denominator_bound >= 1'000'000, "sqrt-pos family needs a denominator bound >= 10^6");
    std::vector<Rational> values{Rational(1001, 1000)};
    std::vector<Rational> demands{Rational(1)};
    const Rational step(mpz_class(1), denominator_bound);
    for (unsigned long i = 2; i <= total_demand; ++i) {
        Rational v = detail::inverse_sqrt_approximation(i - 1, denominator_bound);
        if (!(v < values.back())) v = values.back() - step;
        values.push_back(std::move(v));
        demands.push_back(Rational(static_cast<long>(i)));
    }
    DemandCurve curve(std::move(values), std::move(demands));
    for (const auto& interval : enumerate_equilibria(curve))
        detail::require(interval.empty || interval.level <= 3,
                        "sqrt-pos: approximation too coarse, level " + std::to_string(interval.level) +
                            " is an equilibrium");
    return curve;
}

/// v_i = delta^(i-1), d_i = ((2 - delta)^(i-1) - delta^(n-i+1)) / v_i. Only level 1 is an equilibrium.
inline DemandCurve make_exp_pos(std::size_t n, const Rational& delta) {
    detail::require(n >= 2, "exp-pos family needs n >= 2");
    detail::require(delta > Rational(0) && delta <= Rational(1, 100),
                    "exp-pos family needs 0 < delta <= 1/100, got " + delta.str());
    const Rational alpha = Rational(2) - delta;
    std::vector<Rational> values, demands;
    for (std::size_t i = 1; i <= n; ++i) {
        Rational v = pow(delta, static_cast<unsigned>(i - 1));
        Rational revenue = pow(alpha, static_cast<unsigned>(i - 1)) - pow(delta, static_cast<unsigned>(n - i + 1));
        demands.push_back(revenue / v);
        values.push_back(std::move(v));
    }
    DemandCurve curve(std::move(values), std::move(demands));
    for (const auto& interval : enumerate_equilibria(curve))
        detail::require(interval.empty == (interval.level != 1),
                        "exp-pos: equilibrium structure broken at level " + std::to_string(interval.level));
    return curve;
}

struct RandomCurveBounds {
    Rational value_bound{10};
    Rational demand_bound{100};
    long denominator_bound = 20;
};

/// Seeded random curve with rational entries of bounded denominator.
inline DemandCurve random_instance(std::size_t n, std::uint64_t seed, const RandomCurveBounds& bounds = {}) {
    if (n == 0) throw std::invalid_argument("random_instance: n must be positive");
    if (bounds.value_bound.sign() <= 0 || bounds.demand_bound.sign() <= 0 || bounds.denominator_bound < 1)
        throw std::invalid_argument("random_instance: bounds must be positive");
    TrialRng rng(seed, 0x5eedULL);

    auto draw_distinct = [&](const Rational& bound) {
        std::set<Rational> picked;
        std::size_t attempts = 0;
        while (picked.size() < n) {
            if (++attempts > 1000 * n + 1000)
                throw std::invalid_argument("random_instance: bounds too tight for " + std::to_string(n) + " levels");
            const long den = rng.uniform_int(1, bounds.denominator_bound);
            // numerator in [1, floor(bound * den)]
            const Rational top = bound * Rational(den);
            mpz_class top_int;
            mpz_fdiv_q(top_int.get_mpz_t(), top.numerator().get_mpz_t(), top.denominator().get_mpz_t());
            if (top_int < 1) continue;
            const long num = rng.uniform_int(1, top_int.get_si());
            picked.insert(Rational(num, den));
        }
        return std::vector<Rational>(picked.begin(), picked.end());
    };

    std::vector<Rational> values = draw_distinct(bounds.value_bound);
    std::reverse(values.begin(), values.end());
    std::vector<Rational> demands = draw_distinct(bounds.demand_bound);
    return DemandCurve(std::move(values), std::move(demands));
}

/// Instance family addressed by name, e.g. from the command line.
enum class Family { TwoLevel, TwoLevelEps, Brd3, Geometric, Slow, SqrtPos, ExpPos, Random };

inline const std::map<std::string, Family, std::less<>>& family_names() {
    static const std::map<std::string, Family, std::less<>> names{
        {"two-level", Family::TwoLevel}, {"two-level-eps", Family::TwoLevelEps}, {"brd3", Family::Brd3},
        {"geometric", Family::Geometric}, {"slow", Family::Slow},               {"sqrt-pos", Family::SqrtPos},
        {"exp-pos", Family::ExpPos},     {"random", Family::Random},
    };
    return names;
}

struct FamilySpec {
    Family family;
    std::map<std::string, Rational> parameters;  ///< D, eps, delta, n, bound, seed, ...
};

namespace detail {

inline const Rational& param(const FamilySpec& spec, const std::string& name) {
    auto it = spec.parameters.find(name);
    if (it == spec.parameters.end()) throw std::invalid_argument("missing parameter --" + name);
    return it->second;
}

inline const Rational& param_or(const FamilySpec& spec, const std::string& name, const Rational& fallback) {
    auto it = spec.parameters.find(name);
    return it == spec.parameters.end() ? fallback : it->second;
}

inline unsigned long as_count(const Rational& r, const std::string& name) {
    if (!r.is_integer() || r.sign() < 0 || !r.numerator().fits_ulong_p())
        throw std::invalid_argument("parameter --" + name + " must be a non-negative integer, got " + r.str());
    return r.numerator().get_ui();
}

}  // namespace detail

inline DemandCurve make_instance(const FamilySpec& spec) {
    using detail::as_count;
    using detail::param;
    switch (spec.family) {
        case Family::TwoLevel: return make_two_level(param(spec, "D"));
        case Family::TwoLevelEps: return make_two_level_eps(param(spec, "eps"), param(spec, "D"));
        case Family::Brd3: return make_brd3(param(spec, "D"));
        case Family::Geometric: return make_geometric(as_count(param(spec, "n"), "n"), param(spec, "eps"));
        case Family::Slow: return make_slow(param(spec, "eps"));
        case Family::SqrtPos: {
            const Rational& bound = detail::param_or(spec, "bound", Rational(1'000'000'000L));
            if (!bound.is_integer()) throw std::invalid_argument("parameter --bound must be an integer, got " + bound.str());
            return make_sqrt_pos(as_count(param(spec, "D"), "D"), bound.numerator());
        }
        case Family::ExpPos: return make_exp_pos(as_count(param(spec, "n"), "n"), param(spec, "delta"));
        case Family::Random: {
            RandomCurveBounds bounds;
            bounds.value_bound = detail::param_or(spec, "value-bound", bounds.value_bound);
            bounds.demand_bound = detail::param_or(spec, "demand-bound", bounds.demand_bound);
            bounds.denominator_bound = static_cast<long>(
                as_count(detail::param_or(spec, "denominator-bound", Rational(bounds.denominator_bound)),
                         "denominator-bound"));
            return random_instance(as_count(param(spec, "n"), "n"),
                                   as_count(detail::param_or(spec, "seed", Rational(0)), "seed"), bounds);
        }
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace complements

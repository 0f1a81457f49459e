#pragma once

/**
 * @file core.hpp
 * @brief Two-seller perfect-complements pricing game with a step demand curve.
 *
 * Buyers want one bundle made of both goods. A demand level (v_i, d_i) says
 * that d_i bundles are demanded at any total price <= v_i. Values are
 * strictly decreasing and demands strictly increasing. A seller posting p
 * against an opponent posting q earns p * demand(p + q).
 *
 * Level indices are 1-based throughout the public API (level 1 is the
 * highest value, lowest demand).
 */

#include "complements/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace complements {

/// A demand curve or instance violated one of its invariants.
class InvalidCurve : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DemandCurve {
public:
    DemandCurve(std::vector<Rational> values, std::vector<Rational> demands)
        : values_(std::move(values)), demands_(std::move(demands)) {
        validate();
    }

    [[nodiscard]] std::size_t levels() const { return values_.size(); }
    [[nodiscard]] const std::vector<Rational>& values() const { return values_; }
    [[nodiscard]] const std::vector<Rational>& demands() const { return demands_; }

    /// v_i, 1-based.
    [[nodiscard]] const Rational& value(std::size_t level) const { return values_.at(level - 1); }
    /// d_i, 1-based.
    [[nodiscard]] const Rational& demand_at(std::size_t level) const { return demands_.at(level - 1); }

    /// D = d_n / d_1.
    [[nodiscard]] Rational total_demand_ratio() const { return demands_.back() / demands_.front(); }

    /// W = d_n / min_{i>=2} (d_i - d_{i-1}); empty for single-level curves.
    [[nodiscard]] std::optional<Rational> w_ratio() const {
        if (levels() < 2) return std::nullopt;
        Rational smallest = demands_[1] - demands_[0];
        for (std::size_t i = 2; i < levels(); ++i) smallest = min(smallest, demands_[i] - demands_[i - 1]);
        return demands_.back() / smallest;
    }

    friend bool operator==(const DemandCurve&, const DemandCurve&) = default;

private:
    void validate() const {
        if (values_.empty()) throw InvalidCurve("demand curve needs at least one level");
        if (values_.size() != demands_.size())
            throw InvalidCurve("values and demands differ in length (" + std::to_string(values_.size()) +
                               " vs " + std::to_string(demands_.size()) + ")");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i].sign() <= 0)
                throw InvalidCurve("value " + std::to_string(i + 1) + " must be positive, got " + values_[i].str());
            if (demands_[i].sign() <= 0)
                throw InvalidCurve("demand " + std::to_string(i + 1) + " must be positive, got " + demands_[i].str());
            if (i > 0 && !(values_[i] < values_[i - 1]))
                throw InvalidCurve("values must be strictly decreasing: value " + std::to_string(i + 1) + " (" +
                                   values_[i].str() + ") is not below value " + std::to_string(i) + " (" +
                                   values_[i - 1].str() + ")");
            if (i > 0 && !(demands_[i] > demands_[i - 1]))
                throw InvalidCurve("demands must be strictly increasing: demand " + std::to_string(i + 1) + " (" +
                                   demands_[i].str() + ") is not above demand " + std::to_string(i) + " (" +
                                   demands_[i - 1].str() + ")");
        }
    }

    std::vector<Rational> values_;
    std::vector<Rational> demands_;
};

struct PriceProfile {
    Rational p;  ///< first seller
    Rational q;  ///< second seller

    [[nodiscard]] Rational total() const { return p + q; }
    friend bool operator==(const PriceProfile&, const PriceProfile&) = default;
};

inline void require_price(const Rational& price, const char* what) {
    if (price.sign() < 0) throw std::domain_error(std::string(what) + " must be non-negative, got " + price.str());
}

/// Number of levels whose value is at least `total` (buyers buy at price == value).
inline std::size_t levels_served(const DemandCurve& curve, const Rational& total) {
    std::size_t served = 0;
    while (served < curve.levels() && curve.values()[served] >= total) ++served;
    return served;
}

inline Rational demand(const DemandCurve& curve, const Rational& total) {
    require_price(total, "total price");
    const std::size_t served = levels_served(curve, total);
    return served == 0 ? Rational(0) : curve.demands()[served - 1];
}

inline Rational total_revenue(const DemandCurve& curve, const Rational& total) {
    return total * demand(curve, total);
}

/// Consumer value generated at `total`: sum of v_i (d_i - d_{i-1}) over levels with v_i >= total.
inline Rational welfare(const DemandCurve& curve, const Rational& total) {
    require_price(total, "total price");
    const std::size_t served = levels_served(curve, total);
    Rational sum;
    Rational previous;
    for (std::size_t i = 0; i < served; ++i) {
        sum += curve.values()[i] * (curve.demands()[i] - previous);
        previous = curve.demands()[i];
    }
    return sum;
}

struct BestResponseSet {
    Rational responder_price;          ///< the opponent price being answered
    std::vector<Rational> replies;     ///< in level order (highest total first)
    Rational max_revenue;
    std::vector<std::size_t> levels;   ///< level of each reply; empty for the zero-utility reply

    [[nodiscard]] bool contains(const Rational& price) const {
        for (const auto& r : replies)
            if (r == price) return true;
        return false;
    }
};

/**
 * All revenue-maximizing replies to an opponent price q.
 *
 * A positive-revenue reply always puts the total exactly on some v_i, so the
 * candidates are v_i - q for v_i >= q. When nothing positive is attainable
 * (q >= v_1) the reply is 0.
 */
inline BestResponseSet best_response(const DemandCurve& curve, const Rational& q) {
    require_price(q, "opponent price");
    BestResponseSet out{q, {}, Rational(0), {}};
    for (std::size_t i = 0; i < curve.levels(); ++i) {
        const Rational& v = curve.values()[i];
        if (v < q) break;
        Rational reply = v - q;
        Rational revenue = reply * curve.demands()[i];
        if (revenue.sign() <= 0) continue;
        if (revenue > out.max_revenue) {
            out.max_revenue = revenue;
            out.replies.clear();
            out.levels.clear();
        }
        if (revenue == out.max_revenue) {
            out.replies.push_back(std::move(reply));
            out.levels.push_back(i + 1);
        }
    }
    if (out.replies.empty()) out.replies.push_back(Rational(0));
    return out;
}

struct EquilibriumCheck {
    bool equilibrium = false;
    bool non_trivial = false;  ///< demand at the total price is positive

    explicit operator bool() const { return equilibrium; }
};

inline EquilibriumCheck is_equilibrium(const DemandCurve& curve, const PriceProfile& profile) {
    require_price(profile.p, "price p");
    require_price(profile.q, "price q");
    EquilibriumCheck check;
    check.equilibrium = best_response(curve, profile.q).contains(profile.p) &&
                        best_response(curve, profile.p).contains(profile.q);
    check.non_trivial = demand(curve, profile.total()).sign() > 0;
    return check;
}

/// Closed set of first-seller prices x such that (x, v_i - x) is an equilibrium.
struct EquilibriumInterval {
    std::size_t level = 0;
    Rational lo;
    Rational hi;
    bool empty = true;

    [[nodiscard]] bool contains(const Rational& x) const { return !empty && lo <= x && x <= hi; }
};

/**
 * Exact equilibrium interval at total price v_i.
 *
 * A seller holding x while the total sits at v_i earns x d_i. Moving the
 * total to v_j pays (v_j - v_i + x) d_j, which yields
 *   x >= (v_j - v_i) d_j / (d_i - d_j)   for j < i,
 *   x <= (v_i - v_j) d_j / (d_j - d_i)   for j > i.
 * The opponent holds v_i - x and faces the mirrored constraints.
 */
inline EquilibriumInterval equilibrium_interval(const DemandCurve& curve, std::size_t level) {
    if (level < 1 || level > curve.levels())
        throw std::out_of_range("level " + std::to_string(level) + " outside 1.." + std::to_string(curve.levels()));
    const Rational& vi = curve.value(level);
    const Rational& di = curve.demand_at(level);

    // Bounds on the price a single seller can hold at this level.
    Rational own_lo(0);
    Rational own_hi = vi;
    for (std::size_t j = 1; j <= curve.levels(); ++j) {
        if (j == level) continue;
        const Rational& vj = curve.value(j);
        const Rational& dj = curve.demand_at(j);
        if (j < level)
            own_lo = max(own_lo, (vj - vi) * dj / (di - dj));
        else
            own_hi = min(own_hi, (vi - vj) * dj / (dj - di));
    }

    EquilibriumInterval out;
    out.level = level;
    out.lo = max(own_lo, vi - own_hi);
    out.hi = min(own_hi, vi - own_lo);
    out.empty = out.lo > out.hi;
    return out;
}

inline std::vector<EquilibriumInterval> enumerate_equilibria(const DemandCurve& curve) {
    std::vector<EquilibriumInterval> out;
    out.reserve(curve.levels());
    for (std::size_t i = 1; i <= curve.levels(); ++i) out.push_back(equilibrium_interval(curve, i));
    return out;
}

struct EquilibriumSummary {
    std::size_t level = 0;
    Rational total;
    Rational revenue;
    Rational welfare;
};

namespace detail {

inline EquilibriumSummary summarize(const DemandCurve& curve, std::size_t level) {
    const Rational& v = curve.value(level);
    return {level, v, total_revenue(curve, v), welfare(curve, v)};
}

inline std::vector<std::size_t> equilibrium_levels(const DemandCurve& curve) {
    std::vector<std::size_t> out;
    for (const auto& interval : enumerate_equilibria(curve))
        if (!interval.empty) out.push_back(interval.level);
    if (out.empty()) throw std::logic_error("no non-trivial equilibrium found; this contradicts existence");
    return out;
}

}  // namespace detail

/// Equilibrium with the lowest total price (highest revenue and welfare).
inline EquilibriumSummary best_equilibrium(const DemandCurve& curve) {
    return detail::summarize(curve, detail::equilibrium_levels(curve).back());
}

/// Equilibrium with the highest total price.
inline EquilibriumSummary worst_equilibrium(const DemandCurve& curve) {
    return detail::summarize(curve, detail::equilibrium_levels(curve).front());
}

struct MonopolyPrices {
    std::vector<std::size_t> maximizers;  ///< levels attaining max v_i d_i, ascending
    std::size_t canonical_level = 0;      ///< the maximizer with the smallest value
    Rational price;                       ///< p* = value at canonical_level
    Rational revenue;
};

inline MonopolyPrices monopoly_prices(const DemandCurve& curve) {
    MonopolyPrices out;
    for (std::size_t i = 1; i <= curve.levels(); ++i) {
        Rational r = curve.value(i) * curve.demand_at(i);
        if (out.maximizers.empty() || r > out.revenue) {
            out.revenue = r;
            out.maximizers.clear();
        }
        if (r == out.revenue) out.maximizers.push_back(i);
    }
    out.canonical_level = out.maximizers.back();
    out.price = curve.value(out.canonical_level);
    return out;
}

}  // namespace complements

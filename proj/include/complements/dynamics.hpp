#pragma once

/**
 * @file dynamics.hpp
 * @brief Alternating best-response dynamics and the symmetrized variant.
 *
 * Both engines are exact and deterministic. Plain dynamics stop at an
 * equilibrium, on an exact repeat of (prices, active seller), or at a step
 * cap. A seller that already holds one of its best replies keeps its price,
 * so the fixed points are exactly the equilibria.
 */

#include "complements/core.hpp"
#include "complements/parallel.hpp"
#include "complements/random.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace complements {

enum class Seller { First, Second };

/// Selection among several positive-revenue best replies.
enum class TieBreak { LowestTotal, HighestTotal, FirstListed };

enum class Actor { Start, Seller1, Seller2, Symmetrize };

enum class Termination { Converged, CycleDetected, StepLimit };

inline constexpr std::size_t kDefaultMaxSteps = 1'000'000;

inline std::string_view to_string(TieBreak t) {
    switch (t) {
        case TieBreak::LowestTotal: return "lowest";
        case TieBreak::HighestTotal: return "highest";
        case TieBreak::FirstListed: return "first";
    }
    return "?";
}

inline TieBreak parse_tie_break(std::string_view s) {
    if (s == "lowest") return TieBreak::LowestTotal;
    if (s == "highest") return TieBreak::HighestTotal;
    if (s == "first") return TieBreak::FirstListed;
    throw std::invalid_argument("unknown tie-break policy '" + std::string(s) + "'");
}

inline std::string_view to_string(Actor a) {
    switch (a) {
        case Actor::Start: return "start";
        case Actor::Seller1: return "seller1";
        case Actor::Seller2: return "seller2";
        case Actor::Symmetrize: return "symmetrize";
    }
    return "?";
}

inline std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::Converged: return "converged";
        case Termination::CycleDetected: return "cycle";
        case Termination::StepLimit: return "step_limit";
    }
    return "?";
}

struct TraceStep {
    Actor actor;
    PriceProfile profile;   ///< prices after this step
    Rational revenue;       ///< revenue of the acting seller after the step (total revenue for start/symmetrize)
};

struct DynamicsTrace {
    std::vector<TraceStep> steps;   ///< steps[0] is the start profile
    Termination termination = Termination::StepLimit;
    std::size_t cycle_start = 0;    ///< index into steps; meaningful for CycleDetected
    std::array<std::size_t, 2> updates{0, 0};
    std::size_t turns = 0;          ///< best-response turns taken, including no-move turns

    [[nodiscard]] const PriceProfile& final_profile() const { return steps.back().profile; }
    [[nodiscard]] std::size_t total_updates() const { return updates[0] + updates[1]; }
};

/// The reply a seller moves to. Zero-utility replies are already {0}.
inline const Rational& select_reply(const BestResponseSet& br, TieBreak tie) {
    switch (tie) {
        case TieBreak::LowestTotal: return br.replies.back();
        case TieBreak::HighestTotal:
        case TieBreak::FirstListed: return br.replies.front();
    }
    return br.replies.front();
}

inline DynamicsTrace run_best_response_dynamics(const DemandCurve& curve, PriceProfile start,
                                                Seller first_mover = Seller::First,
                                                TieBreak tie = TieBreak::LowestTotal,
                                                std::size_t max_steps = kDefaultMaxSteps) {
    require_price(start.p, "start price p");
    require_price(start.q, "start price q");
    if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");

    DynamicsTrace trace;
    trace.steps.push_back({Actor::Start, start, total_revenue(curve, start.total())});

    PriceProfile current = start;
    int active = first_mover == Seller::First ? 0 : 1;
    // (p, q, active seller) -> index of the trace step holding that profile
    std::map<std::tuple<Rational, Rational, int>, std::size_t> visited;

    while (true) {
        if (is_equilibrium(curve, current)) {
            trace.termination = Termination::Converged;
            break;
        }
        if (trace.turns >= max_steps) {
            trace.termination = Termination::StepLimit;
            break;
        }
        auto [it, inserted] = visited.try_emplace({current.p, current.q, active}, trace.steps.size() - 1);
        if (!inserted) {
            trace.termination = Termination::CycleDetected;
            trace.cycle_start = it->second;
            break;
        }

        Rational& own = active == 0 ? current.p : current.q;
        const Rational& other = active == 0 ? current.q : current.p;
        BestResponseSet br = best_response(curve, other);
        ++trace.turns;
        if (!br.contains(own)) {
            own = select_reply(br, tie);
            ++trace.updates[static_cast<std::size_t>(active)];
            trace.steps.push_back({active == 0 ? Actor::Seller1 : Actor::Seller2, current, br.max_revenue});
        }
        active = 1 - active;
    }
    return trace;
}

/**
 * Symmetrized best-response dynamics: before every best response both prices
 * are replaced by their average. Positive ties go to the lowest total. Stops
 * once a best-response step leaves the total price unchanged.
 */
inline DynamicsTrace run_symmetrized_dynamics(const DemandCurve& curve, PriceProfile start,
                                              std::size_t max_steps = kDefaultMaxSteps) {
    require_price(start.p, "start price p");
    require_price(start.q, "start price q");
    if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");

    DynamicsTrace trace;
    trace.steps.push_back({Actor::Start, start, total_revenue(curve, start.total())});

    PriceProfile current = start;
    int active = 0;
    std::map<Rational, std::size_t> visited_totals;

    while (true) {
        if (trace.turns >= max_steps) {
            trace.termination = Termination::StepLimit;
            break;
        }
        const Rational before = current.total();
        auto [it, inserted] = visited_totals.try_emplace(before, trace.steps.size() - 1);
        if (!inserted) {
            trace.termination = Termination::CycleDetected;
            trace.cycle_start = it->second;
            break;
        }

        const Rational half = before / Rational(2);
        current = {half, half};
        trace.steps.push_back({Actor::Symmetrize, current, total_revenue(curve, before)});

        BestResponseSet br = best_response(curve, half);
        ++trace.turns;
        if (br.contains(half)) {
            trace.termination = Termination::Converged;
            break;
        }
        (active == 0 ? current.p : current.q) = select_reply(br, TieBreak::LowestTotal);
        ++trace.updates[static_cast<std::size_t>(active)];
        trace.steps.push_back({active == 0 ? Actor::Seller1 : Actor::Seller2, current, br.max_revenue});
        active = 1 - active;
    }
    return trace;
}

/// Totals after each best-response move of a symmetrized trace (start total first).
inline std::vector<Rational> symmetrized_totals(const DynamicsTrace& trace) {
    std::vector<Rational> out{trace.steps.front().profile.total()};
    for (const auto& step : trace.steps)
        if (step.actor == Actor::Seller1 || step.actor == Actor::Seller2) out.push_back(step.profile.total());
    return out;
}

struct RunOutcome {
    Rational final_total;
    Rational final_welfare;
    Rational final_revenue;
    Termination termination;
};

inline RunOutcome outcome_of(const DemandCurve& curve, const DynamicsTrace& trace) {
    const Rational total = trace.final_profile().total();
    return {total, welfare(curve, total), total_revenue(curve, total), trace.termination};
}

struct SweepRow {
    Rational q;
    RunOutcome outcome;
};

/// Best-response dynamics from every split (p* - q, q) on a uniform grid of q in [0, p*].
inline std::vector<SweepRow> monopoly_split_sweep(const DemandCurve& curve, std::size_t grid_points,
                                                  TieBreak tie = TieBreak::LowestTotal,
                                                  std::size_t max_steps = kDefaultMaxSteps) {
    if (grid_points < 2) throw std::invalid_argument("grid_points must be at least 2");
    const Rational p_star = monopoly_prices(curve).price;
    std::vector<SweepRow> rows;
    rows.reserve(grid_points);
    const Rational steps(static_cast<long>(grid_points - 1));
    for (std::size_t k = 0; k < grid_points; ++k) {
        Rational q = p_star * Rational(static_cast<long>(k)) / steps;
        auto trace = run_best_response_dynamics(curve, {p_star - q, q}, Seller::First, tie, max_steps);
        rows.push_back({q, outcome_of(curve, trace)});
    }
    return rows;
}

struct MonteCarloSummary {
    std::size_t trials = 0;
    std::map<Rational, std::size_t> converged_totals;  ///< final total -> count, converged runs only
    std::size_t cycles = 0;
    std::size_t step_limits = 0;

    [[nodiscard]] std::size_t non_converged() const { return cycles + step_limits; }
    [[nodiscard]] std::size_t count_at(const Rational& total) const {
        auto it = converged_totals.find(total);
        return it == converged_totals.end() ? 0 : it->second;
    }
    [[nodiscard]] Rational fraction_at(const Rational& total) const {
        return Rational(static_cast<long>(count_at(total)), static_cast<long>(trials));
    }
};

struct MonteCarloConfig {
    std::size_t trials = 10'000;
    std::uint64_t resolution = 1'000'000;
    std::uint64_t seed = 0;
    TieBreak tie = TieBreak::LowestTotal;
    std::size_t max_steps = kDefaultMaxSteps;
    std::size_t workers = 1;
};

/// Start profile of trial t: both prices uniform on {k v_1 / R : k = 0..R}.
inline PriceProfile random_start(const DemandCurve& curve, std::uint64_t seed, std::uint64_t trial,
                                 std::uint64_t resolution) {
    TrialRng rng(seed, trial);
    const Rational unit = curve.value(1) / Rational(mpz_class(std::to_string(resolution)));
    auto draw = [&] {
        const std::uint64_t k = rng.uniform_index(resolution + 1);
        return unit * Rational(mpz_class(std::to_string(k)));
    };
    Rational p = draw();
    Rational q = draw();
    return {std::move(p), std::move(q)};
}

inline MonteCarloSummary random_start_experiment(const DemandCurve& curve, const MonteCarloConfig& config) {
    if (config.trials == 0) throw std::invalid_argument("trials must be positive");
    if (config.resolution == 0) throw std::invalid_argument("resolution must be positive");

    std::vector<RunOutcome> outcomes(config.trials);
    parallel_for(config.trials, config.workers, [&](std::size_t t) {
        PriceProfile start = random_start(curve, config.seed, t, config.resolution);
        auto trace = run_best_response_dynamics(curve, start, Seller::First, config.tie, config.max_steps);
        outcomes[t] = outcome_of(curve, trace);
    });

    MonteCarloSummary summary;
    summary.trials = config.trials;
    for (const auto& o : outcomes) {
        switch (o.termination) {
            case Termination::Converged: ++summary.converged_totals[o.final_total]; break;
            case Termination::CycleDetected: ++summary.cycles; break;
            case Termination::StepLimit: ++summary.step_limits; break;
        }
    }
    return summary;
}

}  // namespace complements

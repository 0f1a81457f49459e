#pragma once

/**
 * @file io.hpp
 * @brief Instance files and machine-readable outputs.
 *
 * Instance file (UTF-8 JSON):
 *   {"name": "...", "provenance": "...", "values": ["2", "1"], "demands": ["1", "10"]}
 *
 * All rationals are written as canonical "a/b" strings. Object keys keep a
 * fixed order so equal inputs produce byte-identical output.
 */

#include "complements/core.hpp"
#include "complements/dynamics.hpp"
#include "complements/experiments.hpp"
#include "complements/instances.hpp"
#include "complements/parallel.hpp"

#include <json.hpp>

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace complements {

using Json = nlohmann::ordered_json;

struct InstanceFile {
    std::string name;
    std::string provenance;
    DemandCurve curve;
};

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const std::vector<Rational>& rs) {
    Json out = Json::array();
    for (const auto& r : rs) out.push_back(r.str());
    return out;
}

inline Json instance_to_json(const DemandCurve& curve, const std::string& name = {}, const std::string& provenance = {}) {
    Json j;
    if (!name.empty()) j["name"] = name;
    if (!provenance.empty()) j["provenance"] = provenance;
    j["values"] = to_json(curve.values());
    j["demands"] = to_json(curve.demands());
    return j;
}

/// Throws ParseError for malformed text, InvalidCurve for invariant violations.
inline InstanceFile parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance file must be a JSON object");

    auto read_list = [&](const char* field) {
        if (!j.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
        const Json& arr = j.at(field);
        if (!arr.is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
        std::vector<Rational> out;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const Json& item = arr[i];
            std::string text_item;
            if (item.is_string())
                text_item = item.get<std::string>();
            else if (item.is_number_integer())
                text_item = item.dump();
            else
                throw ParseError(std::string(field) + "[" + std::to_string(i) + "]: expected a rational string");
            try {
                out.push_back(Rational::parse(text_item));
            } catch (const ParseError& e) {
                throw ParseError(std::string(field) + "[" + std::to_string(i) + "]: " + e.what());
            }
        }
        return out;
    };

    auto values = read_list("values");
    auto demands = read_list("demands");
    auto optional_string = [&](const char* field) {
        if (!j.contains(field)) return std::string{};
        if (!j.at(field).is_string()) throw ParseError(std::string("field '") + field + "' must be a string");
        return j.at(field).get<std::string>();
    };
    std::string name = optional_string("name");
    std::string provenance = optional_string("provenance");
    return {std::move(name), std::move(provenance), DemandCurve(std::move(values), std::move(demands))};
}

inline InstanceFile read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

inline Json interval_to_json(const EquilibriumInterval& interval) {
    Json j;
    j["level"] = interval.level;
    j["empty"] = interval.empty;
    if (!interval.empty) {
        j["lo"] = interval.lo.str();
        j["hi"] = interval.hi.str();
    }
    return j;
}

inline Json summary_to_json(const EquilibriumSummary& s) {
    Json j;
    j["level"] = s.level;
    j["total"] = s.total.str();
    j["revenue"] = s.revenue.str();
    j["welfare"] = s.welfare.str();
    return j;
}

inline Json report_to_json(const InstanceReport& r) {
    Json j;
    j["n"] = r.levels;
    j["D"] = r.total_demand_ratio.str();
    j["W"] = r.w_ratio ? Json(r.w_ratio->str()) : Json(nullptr);
    j["monopoly_total"] = r.monopoly.price.str();
    j["monopoly_levels"] = r.monopoly.maximizers;
    j["monopoly_revenue"] = r.monopoly.revenue.str();
    j["opt_welfare"] = r.opt_welfare.str();
    Json eqs = Json::array();
    for (const auto& level : r.equilibria) {
        Json e = interval_to_json(level.interval);
        e["revenue"] = level.revenue.str();
        e["welfare"] = level.welfare.str();
        eqs.push_back(std::move(e));
    }
    j["equilibria"] = std::move(eqs);
    j["best_equilibrium"] = summary_to_json(r.best);
    j["worst_equilibrium"] = summary_to_json(r.worst);
    Json ratios;
    ratios["opt_welfare_over_best_revenue"] = r.ratios.opt_welfare_over_best_revenue.str();
    ratios["monopoly_revenue_over_best_revenue"] = r.ratios.monopoly_revenue_over_best_revenue.str();
    ratios["best_welfare_over_worst_welfare"] = r.ratios.best_welfare_over_worst_welfare.str();
    ratios["best_revenue_over_worst_revenue"] = r.ratios.best_revenue_over_worst_revenue.str();
    j["ratios"] = std::move(ratios);
    return j;
}

inline Json trace_to_json(const DynamicsTrace& trace) {
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        Json step;
        step["actor"] = std::string(to_string(s.actor));
        step["p"] = s.profile.p.str();
        step["q"] = s.profile.q.str();
        step["revenue"] = s.revenue.str();
        steps.push_back(std::move(step));
    }
    Json j;
    j["steps"] = std::move(steps);
    j["termination"] = std::string(to_string(trace.termination));
    if (trace.termination == Termination::CycleDetected) j["cycle_start"] = trace.cycle_start;
    j["updates"] = {trace.updates[0], trace.updates[1]};
    j["turns"] = trace.turns;
    return j;
}

inline std::string trace_to_csv(const DynamicsTrace& trace) {
    std::ostringstream os;
    os << "index,actor,p,q,total,revenue\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        os << i << ',' << to_string(s.actor) << ',' << s.profile.p << ',' << s.profile.q << ','
           << s.profile.total() << ',' << s.revenue << '\n';
    }
    return os.str();
}

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "q,final_total,final_welfare,final_revenue,termination\n";
    for (const auto& r : rows)
        os << r.q << ',' << r.outcome.final_total << ',' << r.outcome.final_welfare << ',' << r.outcome.final_revenue
           << ',' << to_string(r.outcome.termination) << '\n';
    return os.str();
}

inline Json sweep_to_json(const std::vector<SweepRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        Json row;
        row["q"] = r.q.str();
        row["final_total"] = r.outcome.final_total.str();
        row["final_welfare"] = r.outcome.final_welfare.str();
        row["final_revenue"] = r.outcome.final_revenue.str();
        row["termination"] = std::string(to_string(r.outcome.termination));
        out.push_back(std::move(row));
    }
    return out;
}

/// Monte Carlo summary; the worst/best fractions refer to the extreme equilibrium totals.
inline Json monte_carlo_to_json(const DemandCurve& curve, const MonteCarloConfig& config,
                                const MonteCarloSummary& summary) {
    Json j;
    j["trials"] = summary.trials;
    j["resolution"] = config.resolution;
    j["seed"] = config.seed;
    j["tie"] = std::string(to_string(config.tie));
    Json outcomes = Json::array();
    for (const auto& [total, count] : summary.converged_totals) {
        Json o;
        o["total"] = total.str();
        o["welfare"] = welfare(curve, total).str();
        o["revenue"] = total_revenue(curve, total).str();
        o["count"] = count;
        outcomes.push_back(std::move(o));
    }
    j["outcomes"] = std::move(outcomes);
    j["cycles"] = summary.cycles;
    j["step_limits"] = summary.step_limits;
    j["non_converged"] = summary.non_converged();
    j["worst_equilibrium_fraction"] = summary.fraction_at(worst_equilibrium(curve).total).str();
    j["best_equilibrium_fraction"] = summary.fraction_at(best_equilibrium(curve).total).str();
    return j;
}

inline std::string bound_checks_csv_header() { return "instance,bound,asserted,holds,lhs,rhs,witness\n"; }

inline std::string bound_checks_to_csv(const std::string& instance, const std::vector<BoundCheckResult>& checks) {
    std::ostringstream os;
    for (const auto& c : checks)
        os << instance << ',' << c.name << ',' << (c.asserted ? "yes" : "no") << ',' << (c.holds ? "yes" : "no") << ','
           << c.lhs << ',' << c.rhs << ',' << c.witness << '\n';
    return os.str();
}

struct VerificationRun {
    std::string csv;            ///< header plus one row per check per instance
    std::size_t instances = 0;
    std::size_t failures = 0;   ///< asserted checks that do not hold
};

inline std::vector<BoundCheckResult> all_checks(const DemandCurve& curve, std::size_t samples, std::uint64_t seed) {
    auto checks = verify_bounds(curve);
    auto lemmas = lemma_checks(curve, samples, seed);
    checks.insert(checks.end(), std::make_move_iterator(lemmas.begin()), std::make_move_iterator(lemmas.end()));
    return checks;
}

inline VerificationRun summarize_checks(const std::vector<std::string>& labels,
                                        const std::vector<std::vector<BoundCheckResult>>& per_instance) {
    VerificationRun run;
    run.instances = per_instance.size();
    run.csv = bound_checks_csv_header();
    for (std::size_t i = 0; i < per_instance.size(); ++i) {
        run.csv += bound_checks_to_csv(labels[i], per_instance[i]);
        for (const auto& c : per_instance[i])
            if (c.asserted && !c.holds) ++run.failures;
    }
    return run;
}

/// Bound and lemma checks on `count` seeded random curves with n levels.
/// Instance i uses seed (seed, i); output does not depend on `workers`.
inline VerificationRun verify_random(std::size_t n, std::size_t count, std::uint64_t seed, std::size_t workers,
                                     std::size_t samples = 20, const RandomCurveBounds& bounds = {}) {
    std::vector<std::vector<BoundCheckResult>> per_instance(count);
    std::vector<std::string> labels(count);
    parallel_for(count, workers, [&](std::size_t i) {
        const std::uint64_t instance_seed = TrialRng(seed, i).next();
        const DemandCurve curve = random_instance(n, instance_seed, bounds);
        labels[i] = "random-" + std::to_string(n) + "-" + std::to_string(seed) + "-" + std::to_string(i);
        per_instance[i] = all_checks(curve, samples, instance_seed);
    });
    return summarize_checks(labels, per_instance);
}

}  // namespace complements

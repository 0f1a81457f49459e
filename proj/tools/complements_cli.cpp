// complements: command-line front end for the perfect-complements pricing game.
//
// Exit codes: 0 ok / converged, 1 asserted bound failed (verify),
// 2 parse or usage error, 3 instance invariant violated,
// 4 dynamics hit a cycle, 5 dynamics hit the step limit.

#include "complements/core.hpp"
#include "complements/dynamics.hpp"
#include "complements/experiments.hpp"
#include "complements/instances.hpp"
#include "complements/io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace complements;

enum ExitCode : int {
    kOk = 0,
    kBoundFailed = 1,
    kParseError = 2,
    kInvalidInstance = 3,
    kCycle = 4,
    kStepLimit = 5,
};

struct Output {
    std::string path;
    std::string format = "json";

    void write(const std::string& text) const {
        if (path.empty() || path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) throw ParseError("cannot write output file '" + path + "'");
        out << text;
    }
};

void add_output_options(CLI::App* cmd, Output& out, const std::vector<std::string>& formats) {
    cmd->add_option("--out,-o", out.path, "Output path (default stdout)");
    out.format = formats.front();
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember(formats));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::size_t default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

int dynamics_exit(Termination t) {
    switch (t) {
        case Termination::Converged: return kOk;
        case Termination::CycleDetected: return kCycle;
        case Termination::StepLimit: return kStepLimit;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perfect-complements pricing game: equilibria, dynamics and bound checks"};
    app.require_subcommand(1);

    // analyze
    std::string instance_path;
    Output analyze_out;
    auto* analyze = app.add_subcommand("analyze", "Exact equilibrium and efficiency report for an instance");
    analyze->add_option("instance", instance_path, "Instance JSON file")->required();
    add_output_options(analyze, analyze_out, {"json"});

    // dynamics
    std::vector<std::string> start{"0", "0"};
    std::string mode = "br";
    int first_mover = 1;
    std::string tie_name = "lowest";
    std::size_t max_steps = kDefaultMaxSteps;
    Output dynamics_out;
    auto* dynamics = app.add_subcommand("dynamics", "Run best-response or symmetrized dynamics and print the trace");
    dynamics->add_option("instance", instance_path, "Instance JSON file")->required();
    dynamics->add_option("--start", start, "Start prices p q")->expected(2);
    dynamics->add_option("--mode", mode, "br or symmetrized")->check(CLI::IsMember({"br", "symmetrized"}));
    dynamics->add_option("--first", first_mover, "Seller moving first (br mode)")->check(CLI::IsMember({1, 2}));
    dynamics->add_option("--tie", tie_name, "Positive-revenue tie policy")
        ->check(CLI::IsMember({"lowest", "highest", "first"}));
    dynamics->add_option("--max-steps", max_steps, "Best-response turn cap")->check(CLI::PositiveNumber);
    add_output_options(dynamics, dynamics_out, {"json", "csv"});

    // generate
    std::string family_name;
    std::map<std::string, std::string> family_params;
    std::string instance_name;
    Output generate_out;
    auto* generate = app.add_subcommand("generate", "Write an instance from a named family");
    generate->add_option("family", family_name, "two-level, two-level-eps, brd3, geometric, slow, sqrt-pos, exp-pos, random")
        ->required();
    for (const char* p : {"D", "eps", "delta", "n", "bound", "seed", "value-bound", "demand-bound", "denominator-bound"}) {
        generate->add_option_function<std::string>(
            std::string("--") + p, [&family_params, p](const std::string& v) { family_params[p] = v; },
            std::string("Family parameter ") + p);
    }
    generate->add_option("--name", instance_name, "Instance name stored in the file");
    add_output_options(generate, generate_out, {"json"});

    // sweep
    std::size_t grid_points = 1001;
    Output sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Best-response dynamics from every split of the monopoly price");
    sweep->add_option("instance", instance_path, "Instance JSON file")->required();
    sweep->add_option("--grid-points", grid_points, "Number of splits (>= 2)")->check(CLI::Range(2ul, 100'000'000ul));
    sweep->add_option("--tie", tie_name, "Positive-revenue tie policy")->check(CLI::IsMember({"lowest", "highest", "first"}));
    sweep->add_option("--max-steps", max_steps, "Best-response turn cap")->check(CLI::PositiveNumber);
    add_output_options(sweep, sweep_out, {"csv", "json"});

    // montecarlo
    MonteCarloConfig mc;
    mc.workers = default_workers();
    Output mc_out;
    auto* montecarlo = app.add_subcommand("montecarlo", "Best-response dynamics from seeded random starts");
    montecarlo->add_option("instance", instance_path, "Instance JSON file")->required();
    montecarlo->add_option("--trials", mc.trials, "Number of runs")->check(CLI::PositiveNumber);
    montecarlo->add_option("--resolution", mc.resolution, "Start prices drawn from {k v1 / R}")->check(CLI::PositiveNumber);
    montecarlo->add_option("--seed", mc.seed, "Base seed");
    montecarlo->add_option("--tie", tie_name, "Positive-revenue tie policy")
        ->check(CLI::IsMember({"lowest", "highest", "first"}));
    montecarlo->add_option("--max-steps", max_steps, "Best-response turn cap")->check(CLI::PositiveNumber);
    montecarlo->add_option("--workers", mc.workers, "Worker threads")->check(CLI::PositiveNumber);
    add_output_options(montecarlo, mc_out, {"json"});

    // verify
    std::vector<std::uint64_t> random_spec;
    std::size_t verify_workers = default_workers();
    std::size_t samples = 20;
    std::uint64_t verify_seed = 0;
    Output verify_out;
    auto* verify = app.add_subcommand("verify", "Exact bound and lemma checks; exit 0 iff all asserted bounds hold");
    auto* verify_instance = verify->add_option("instance", instance_path, "Instance JSON file");
    auto* verify_random_opt = verify->add_option("--random", random_spec, "n count seed")->expected(3);
    verify_instance->excludes(verify_random_opt);
    verify->add_option("--samples", samples, "Random totals per lemma check")->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_seed, "Seed for lemma sampling (single instance)");
    verify->add_option("--workers", verify_workers, "Worker threads")->check(CLI::PositiveNumber);
    add_output_options(verify, verify_out, {"csv"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseError;
    }

    try {
        if (*analyze) {
            const auto file = read_instance_file(instance_path);
            analyze_out.write(dump(report_to_json(report(file.curve))));
            return kOk;
        }
        if (*dynamics) {
            const auto file = read_instance_file(instance_path);
            const PriceProfile profile{Rational::parse(start[0]), Rational::parse(start[1])};
            if (profile.p.sign() < 0 || profile.q.sign() < 0) throw ParseError("start prices must be non-negative");
            const DynamicsTrace trace =
                mode == "br" ? run_best_response_dynamics(file.curve, profile,
                                                          first_mover == 1 ? Seller::First : Seller::Second,
                                                          parse_tie_break(tie_name), max_steps)
                             : run_symmetrized_dynamics(file.curve, profile, max_steps);
            dynamics_out.write(dynamics_out.format == "csv" ? trace_to_csv(trace) : dump(trace_to_json(trace)));
            return dynamics_exit(trace.termination);
        }
        if (*generate) {
            auto it = family_names().find(family_name);
            if (it == family_names().end()) throw ParseError("unknown family '" + family_name + "'");
            FamilySpec spec{it->second, {}};
            std::string provenance = family_name;
            for (const auto& [key, text] : family_params) {
                spec.parameters[key] = Rational::parse(text);
                provenance += " --" + key + " " + text;
            }
            const DemandCurve curve = make_instance(spec);
            generate_out.write(dump(instance_to_json(curve, instance_name.empty() ? family_name : instance_name, provenance)));
            return kOk;
        }
        if (*sweep) {
            const auto file = read_instance_file(instance_path);
            const auto rows = monopoly_split_sweep(file.curve, grid_points, parse_tie_break(tie_name), max_steps);
            sweep_out.write(sweep_out.format == "csv" ? sweep_to_csv(rows) : dump(sweep_to_json(rows)));
            return kOk;
        }
        if (*montecarlo) {
            const auto file = read_instance_file(instance_path);
            mc.tie = parse_tie_break(tie_name);
            mc.max_steps = max_steps;
            const auto summary = random_start_experiment(file.curve, mc);
            mc_out.write(dump(monte_carlo_to_json(file.curve, mc, summary)));
            return kOk;
        }
        if (*verify) {
            VerificationRun run;
            if (!random_spec.empty()) {
                run = verify_random(random_spec[0], random_spec[1], random_spec[2], verify_workers, samples);
            } else if (!instance_path.empty()) {
                const auto file = read_instance_file(instance_path);
                const std::string label = file.name.empty() ? instance_path : file.name;
                run = summarize_checks({label}, {all_checks(file.curve, samples, verify_seed)});
            } else {
                throw ParseError("verify needs an instance file or --random n count seed");
            }
            verify_out.write(run.csv);
            if (run.failures > 0) {
                std::cerr << run.failures << " asserted bound(s) failed\n";
                return kBoundFailed;
            }
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const InvalidCurve& e) {
        std::cerr << "invalid instance: " << e.what() << '\n';
        return kInvalidInstance;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidInstance;
    }
    return kOk;
}

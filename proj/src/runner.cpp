#include "dd/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "dd/report.hpp"
#include "dd/semilinear.hpp"
#include "dd/strichartz.hpp"

namespace dd {
namespace {

TimeProfile profile_from(const RunConfig& cfg, const std::string& section) {
    const std::string kind = cfg.get(section, "kind", "identity");
    const double alpha = cfg.number(section, "alpha", 0.0);
    return builtin_profile(profile_kind_from_string(kind), alpha);
}

DispersionSymbol symbol_from(const RunConfig& cfg, const std::string& section) {
    const std::string kind = cfg.get(section, "kind", "radial_power");
    const double m = cfg.number(section, "m", 2.0);
    return builtin_symbol(symbol_kind_from_string(kind), m);
}

WeightSymbol weight_from(const RunConfig& cfg, const std::string& section, const WeightSymbol& fallback) {
    if (cfg.sections.count(section) == 0) return fallback;
    const std::string kind = cfg.require(section, "kind");
    if (kind == "unit") return unit_weight();
    if (kind == "power") return spectral_power(cfg.require_number(section, "exponent"));
    if (kind == "axis_power")
        return axis_spectral_power(cfg.integer(section, "axis", 0), cfg.require_number(section, "exponent"));
    throw ConfigError("unknown weight kind '" + kind + "' in [" + section + "]");
}

WeightSymbol cutoff_from(const RunConfig& cfg) {
    if (cfg.sections.count("chi") == 0) return unit_weight();
    const std::string kind = cfg.require("chi", "kind");
    if (kind == "unit") return unit_weight();
    if (kind == "halfspace") return cutoff_halfspace(cfg.integer("chi", "sign", 1));
    if (kind == "ball") return cutoff_ball(cfg.number("chi", "radius", 1.0));
    if (kind == "annulus")
        return cutoff_annulus(cfg.require_number("chi", "r_inner"), cfg.require_number("chi", "r_outer"));
    throw ConfigError("unknown cutoff kind '" + kind + "' in [chi]");
}

VerifySetup setup_from(const RunConfig& cfg) {
    VerifySetup s;
    s.dims = cfg.integer("grid", "n", 1);
    s.points = cfg.integer("grid", "N", 256);
    s.half_width = cfg.number("grid", "R", 20.0);
    s.window_lo = cfg.number("estimate", "window_lo", -2.0);
    s.window_hi = cfg.number("estimate", "window_hi", 2.0);
    s.time_steps = static_cast<std::size_t>(cfg.integer("estimate", "J", 512));
    s.seed = static_cast<std::uint64_t>(cfg.integer("", "seed", 0));
    s.bound_slack = cfg.number("tolerances", "bound_slack", 0.05);
    s.ladder_drift_limit = cfg.number("tolerances", "ladder_drift", 0.05);
    s.boundary_limit = cfg.number("tolerances", "boundary", 1e-6);
    s.equality_tol = cfg.number("tolerances", "equality", 1e-3);
    s.equality_shrink = cfg.number("tolerances", "equality_shrink", 3.5);
    s.with_ladder = cfg.flag("estimate", "ladder", true);
    return s;
}

WaveField data_from(const RunConfig& cfg, GridPtr grid, std::uint64_t seed) {
    const std::string kind = cfg.get("data", "kind", "gaussian");
    const double amplitude = cfg.number("data", "amplitude", 1.0);
    WaveField f = [&] {
        if (kind == "gaussian") {
            const double w = cfg.number("data", "width", 1.0);
            return make_field(grid, [w](const Vec3& x) { return complexd(std::exp(-norm_sq(x) / (w * w)), 0.0); });
        }
        if (kind == "modulated") {
            const double k = cfg.number("data", "k", 2.0);
            return make_field(grid, [k](const Vec3& x) { return std::polar(std::exp(-norm_sq(x)), k * x[0]); });
        }
        if (kind == "family") {
            const auto fam = versioned_family(grid->dims(), grid->half_width(), seed);
            const int idx = cfg.integer("data", "member", 0);
            if (idx < 0 || idx >= static_cast<int>(fam.size())) throw ConfigError("data member index out of range");
            return materialize(fam[static_cast<std::size_t>(idx)], grid);
        }
        throw ConfigError("unknown data kind '" + kind + "'");
    }();
    if (amplitude != 1.0) f = complexd(amplitude, 0.0) * f;
    if (cfg.has("data", "norm")) {
        const double target = cfg.require_number("data", "norm");
        const double current = lp_norm(f, 2.0);
        if (current == 0.0) throw ConfigError("cannot normalize the zero field");
        f = complexd(target / current, 0.0) * f;
    }
    return f;
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Pass: return kExitOk;
        case Verdict::Fail: return kExitFail;
        case Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitError;
}

EstimateReport dispatch_estimate(const std::string& id, const RunConfig& cfg, const VerifySetup& setup) {
    const TimeProfile profile = profile_from(cfg, "profile");
    const TimeProfile reference = profile_from(cfg, "profile_f");
    const double p = cfg.number("estimate", "p", 2.0);

    if (id == "lemma_T1_i" || id == "lemma_T1_ii" || id == "lemma_T1_iii") {
        const LemmaCase which = id == "lemma_T1_i" ? LemmaCase::i
                              : id == "lemma_T1_ii" ? LemmaCase::ii
                                                    : LemmaCase::iii;
        return verify_lemma_t1(which, profile, weight_from(cfg, "sigma", unit_weight()),
                               symbol_from(cfg, "symbol"), p, setup);
    }
    if (id == "corTC2") {
        return verify_comparison(weight_from(cfg, "sigma", unit_weight()), symbol_from(cfg, "symbol"),
                                 weight_from(cfg, "tau", unit_weight()), symbol_from(cfg, "symbol_tilde"),
                                 cutoff_from(cfg), profile, reference, setup);
    }
    if (id == "thm2" || id == "gse") {
        const SmoothingTheorem thm = id == "thm2" ? SmoothingTheorem::order_m : SmoothingTheorem::laplacian_axis;
        const double m = cfg.number("estimate", "m", 2.0);
        const int axis = cfg.integer("estimate", "axis", 0);
        if (cfg.flag("estimate", "summable", false)) {
            const SummableWeight sw = default_summable_weight(infinite_critical_class(profile));
            return verify_smoothing(thm, m, axis, profile, &sw, setup);
        }
        return verify_smoothing(thm, m, axis, profile, nullptr, setup);
    }
    if (id == "sug" || id == "ky" || id == "w" || id == "sugb" || id == "sugf") {
        const WeightedEstimate which = id == "sug"  ? WeightedEstimate::sug
                                     : id == "ky"   ? WeightedEstimate::ky
                                     : id == "w"    ? WeightedEstimate::w
                                     : id == "sugb" ? WeightedEstimate::sugb
                                                    : WeightedEstimate::sugf;
        const double value = which == WeightedEstimate::sugf ? cfg.require_number("estimate", "alpha")
                                                             : cfg.number("estimate", "beta", 0.25);
        return verify_weighted_family(which, value, cfg.number("estimate", "m", 2.0),
                                      cfg.number("estimate", "eps", 0.25), profile, setup);
    }
    if (id == "identity_scaling") {
        return verify_identity_scaling(cfg.number("estimate", "m", 4.0), cfg.number("estimate", "beta", 0.25),
                                       profile, reference, setup);
    }
    if (id == "rad") {
        return verify_radial(weight_from(cfg, "sigma", unit_weight()), weight_from(cfg, "tau", unit_weight()),
                             symbol_from(cfg, "symbol"), symbol_from(cfg, "symbol_tilde"), cutoff_from(cfg),
                             profile, reference, setup);
    }
    if (id == "conj") {
        return verify_universal(symbol_from(cfg, "symbol"), cfg.number("estimate", "s", 1.0), profile, setup);
    }
    throw ConfigError("unknown estimate id '" + id + "' for the verify command");
}

EstimateReport dispatch_strichartz(const std::string& id, const RunConfig& cfg, const VerifySetup& setup) {
    const TimeProfile profile = profile_from(cfg, "profile");
    const int n = setup.dims;
    const AdmissiblePair pair = cfg.has("estimate", "q")
                                    ? make_admissible_pair(cfg.require_number("estimate", "q"),
                                                           cfg.require_number("estimate", "p"), n)
                                    : admissible_from_p(cfg.require_number("estimate", "p"), n);

    if (id == "wh2" || id == "lwh2" || id == "wh2.1" || id == "wh2_endpoint") {
        return verify_homogeneous(pair, profile, nullptr, setup);
    }
    if (id == "wh3") {
        const SummableWeight sw = default_summable_weight(infinite_critical_class(profile));
        return verify_homogeneous(pair, profile, &sw, setup);
    }
    if (id == "dwh2") {
        return verify_dual(pair, profile, nullptr, setup);
    }
    if (id == "dwh3") {
        const SummableWeight sw = default_summable_weight(infinite_critical_class(profile));
        return verify_dual(pair, profile, &sw, setup);
    }
    const AdmissiblePair dual_pair =
        cfg.has("estimate", "q2")
            ? make_admissible_pair(cfg.require_number("estimate", "q2"), cfg.require_number("estimate", "p2"), n)
            : pair;
    if (id == "wi2") {
        return verify_inhomogeneous(pair, dual_pair, profile, false, false, nullptr, setup);
    }
    if (id == "wi3") {
        const SummableWeight sw = default_summable_weight(infinite_critical_class(profile));
        return verify_inhomogeneous(pair, dual_pair, profile, false, false, &sw, setup);
    }
    if (id == "lwi2" || id == "wi2.1") {
        return verify_inhomogeneous(pair, dual_pair, profile, true, false, nullptr, setup);
    }
    if (id == "lwi3" || id == "wi3.1") {
        return verify_inhomogeneous(pair, dual_pair, profile, true, true, nullptr, setup);
    }
    throw ConfigError("unknown estimate id '" + id + "' for the strichartz command");
}

int run_estimate_command(const std::string& command, const RunConfig& cfg, const std::string& out_dir) {
    const VerifySetup setup = setup_from(cfg);
    const std::string id = cfg.require("estimate", "id");
    EstimateReport rep = command == "verify" ? dispatch_estimate(id, cfg, setup)
                                             : dispatch_strichartz(id, cfg, setup);
    rep.id = id;  // reports carry the exact requested id

    const std::string hash = config_hash_hex(cfg.raw);
    const std::string json = report_to_json(rep, command, hash, setup.dims, setup.points, setup.half_width,
                                            setup.seed);
    write_text_file(out_dir + "/" + cfg.get("output", "json", "report.json"), json);
    write_ratios_csv(rep, out_dir + "/" + cfg.get("output", "csv", "ratios.csv"));
    std::cout << id << ": " << to_string(rep.verdict) << " (observed " << format_sci(rep.observed) << ")\n";
    return verdict_exit(rep.verdict);
}

int run_evolve(const RunConfig& cfg, const std::string& out_dir) {
    auto grid = make_grid(cfg.integer("grid", "n", 1), cfg.integer("grid", "N", 256),
                          cfg.number("grid", "R", 20.0));
    const TimeProfile profile = profile_from(cfg, "profile");
    const DispersionSymbol symbol = symbol_from(cfg, "symbol");
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.integer("", "seed", 0));
    const WaveField data = data_from(cfg, grid, seed);
    Propagator flow(grid, symbol, profile);
    const Trajectory traj = flow.trajectory(data, cfg.number("data", "t0", 0.0), cfg.number("data", "t1", 1.0),
                                            static_cast<std::size_t>(cfg.integer("data", "J", 128)));
    write_trajectory_csv(traj, out_dir + "/" + cfg.get("output", "trajectory_csv", "trajectory.csv"));
    write_trajectory_summary_json(traj, out_dir + "/" + cfg.get("output", "trajectory_json", "trajectory.json"));
    std::cout << "evolve: wrote " << traj.fields.size() << " snapshots\n";
    return kExitOk;
}

int run_solve(const RunConfig& cfg, const std::string& out_dir) {
    auto grid = make_grid(cfg.integer("grid", "n", 1), cfg.integer("grid", "N", 256),
                          cfg.number("grid", "R", 20.0));
    const TimeProfile profile = profile_from(cfg, "profile");
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.integer("", "seed", 0));
    const WaveField data = data_from(cfg, grid, seed);
    const double p = cfg.number("solve", "p", 3.0);
    const complexd mu(cfg.number("solve", "mu_re", 1.0), cfg.number("solve", "mu_im", 0.0));
    const SemilinearProblem problem =
        make_semilinear_problem(grid, p, mu, profile, data, cfg.number("solve", "T", 0.5),
                                static_cast<std::size_t>(cfg.integer("solve", "J", 512)),
                                cfg.flag("solve", "dealias", false));
    const auto [traj, diag] =
        picard_solve(problem, cfg.number("solve", "tol", 1e-12), cfg.integer("solve", "max_iter", 64));

    write_trajectory_csv(traj, out_dir + "/" + cfg.get("output", "trajectory_csv", "solution.csv"));
    write_trajectory_summary_json(traj, out_dir + "/" + cfg.get("output", "trajectory_json", "solution.json"));

    std::ostringstream d;
    d << "{\n  \"schema\": \"dd-report/1\",\n  \"kind\": \"solve_diagnostics\",\n";
    d << "  \"config_hash\": \"" << config_hash_hex(cfg.raw) << "\",\n";
    d << "  \"iterations\": " << diag.iterations << ",\n  \"distances\": [";
    for (std::size_t i = 0; i < diag.distances.size(); ++i)
        d << (i ? ", " : "") << format_sci(diag.distances[i]);
    d << "],\n  \"contraction_factors\": [";
    for (std::size_t i = 0; i < diag.contraction_factors.size(); ++i)
        d << (i ? ", " : "") << format_sci(diag.contraction_factors[i]);
    d << "],\n  \"final_residual\": " << format_sci(diag.final_residual) << ",\n";
    d << "  \"solution_norm\": " << format_sci(diag.solution_norm) << ",\n";
    d << "  \"horizon\": " << format_sci(diag.horizon) << "\n}\n";
    write_text_file(out_dir + "/" + cfg.get("output", "diagnostics_json", "diagnostics.json"), d.str());

    std::ostringstream c;
    c << "iteration,distance,contraction_factor\n";
    for (std::size_t i = 0; i < diag.distances.size(); ++i)
        c << (i + 1) << ',' << format_sci(diag.distances[i]) << ','
          << (i == 0 ? "" : format_sci(diag.contraction_factors[i - 1])) << "\n";
    write_text_file(out_dir + "/" + cfg.get("output", "diagnostics_csv", "diagnostics.csv"), c.str());

    std::cout << "solve: converged in " << diag.iterations << " iterations, residual "
              << format_sci(diag.final_residual) << "\n";
    return kExitOk;
}

int run_sweep(const RunConfig& cfg, const std::string& out_dir) {
    const std::string parameter = cfg.require("sweep", "parameter");
    const std::vector<double> values = cfg.number_list("sweep", "values");
    if (values.empty()) throw ConfigError("sweep: empty parameter grid");

    std::string section = "estimate", key = parameter;
    if (const auto dot = parameter.find('.'); dot != std::string::npos) {
        section = parameter.substr(0, dot);
        key = parameter.substr(dot + 1);
    } else if (parameter == "N" || parameter == "n" || parameter == "R") {
        section = "grid";
    } else if (parameter == "T") {
        section = "estimate";
        key = "window_hi";
    }

    static const std::set<std::string> strichartz_ids = {"wh2",   "wh3",  "dwh2", "dwh3",  "wi2",
                                                         "wi3",   "lwh2", "lwi2", "lwi3",  "wh2.1",
                                                         "wi2.1", "wi3.1", "wh2_endpoint"};
    const std::string command =
        strichartz_ids.count(cfg.get("estimate", "id", "")) > 0 ? "strichartz" : "verify";

    std::ostringstream merged;
    merged << "parameter,value,observed,verdict\n";
    int exit_code = kExitOk;
    for (std::size_t i = 0; i < values.size(); ++i) {
        RunConfig point = cfg;
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
        point.sections[section][key] = buf;
        const VerifySetup setup = setup_from(point);
        const std::string id = point.require("estimate", "id");
        EstimateReport rep = command == "verify" ? dispatch_estimate(id, point, setup)
                                                 : dispatch_strichartz(id, point, setup);
        rep.id = id;
        rep.params.emplace_back("swept_" + key, values[i]);
        const std::string json = report_to_json(rep, "sweep", config_hash_hex(cfg.raw), setup.dims, setup.points,
                                                setup.half_width, setup.seed);
        write_text_file(out_dir + "/report_" + std::to_string(i) + ".json", json);
        merged << parameter << ',' << format_sci(values[i]) << ',' << format_sci(rep.observed) << ','
               << to_string(rep.verdict) << "\n";
        exit_code = std::max(exit_code, verdict_exit(rep.verdict));
        std::cout << parameter << " = " << values[i] << ": " << to_string(rep.verdict) << "\n";
    }
    write_text_file(out_dir + "/" + cfg.get("output", "csv", "sweep.csv"), merged.str());
    return exit_code;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& config, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    if (command == "verify" || command == "strichartz") return run_estimate_command(command, config, out_dir);
    if (command == "evolve") return run_evolve(config, out_dir);
    if (command == "solve") return run_solve(config, out_dir);
    if (command == "sweep") return run_sweep(config, out_dir);
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace dd

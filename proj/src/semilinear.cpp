#include "dd/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dd/parallel.hpp"
#include "dd/spectral.hpp"

namespace dd {
namespace {

const DispersionSymbol& laplacian_symbol() {
    static const DispersionSymbol lap = builtin_symbol(SymbolKind::laplacian, 2.0);
    return lap;
}

Trajectory free_flow(const SemilinearProblem& problem) {
    Propagator flow(problem.grid, laplacian_symbol(), problem.profile);
    return flow.trajectory(problem.initial_data, 0.0, problem.horizon, problem.time_steps);
}

Trajectory nonlinearity_trajectory(const Trajectory& u, const SemilinearProblem& problem) {
    Trajectory g = u;
    for (auto& f : g.fields) {
        f = nonlinearity(f, problem.p);
        if (problem.dealias) f = dealias_two_thirds(f);
    }
    return g;
}

Trajectory apply_phi(const SemilinearProblem& problem, const Trajectory& linear, const Trajectory& u) {
    Trajectory next = linear;
    if (problem.mu == complexd(0.0, 0.0)) return next;
    const Trajectory forcing = nonlinearity_trajectory(u, problem);
    const std::vector<WaveField> retarded = duhamel_all(forcing, problem.profile, laplacian_symbol());
    for (std::size_t j = 0; j < next.fields.size(); ++j) add_scaled(next.fields[j], problem.mu, retarded[j]);
    return next;
}

}  // namespace

WaveField nonlinearity(const WaveField& u, double p) {
    WaveField out = u;
    par::for_each(out.size(), [&](std::size_t i) {
        const double a = std::abs(out.values[i]);
        out.values[i] *= (a == 0.0 ? 0.0 : std::pow(a, p - 1.0));
    });
    return out;
}

WaveField dealias_two_thirds(const WaveField& u) {
    const Grid& g = *u.grid;
    const int cut = g.points_per_dim() / 3;
    return apply_mode_table(u, [&] {
        std::vector<complexd> mask(g.site_count());
        par::for_each(mask.size(), [&](std::size_t k) {
            const auto idx = g.unravel(k);
            bool keep = true;
            for (int d = 0; d < g.dims(); ++d)
                if (std::abs(g.signed_index(idx[static_cast<std::size_t>(d)])) > cut) keep = false;
            mask[k] = complexd(keep ? 1.0 : 0.0, 0.0);
        });
        return mask;
    }());
}

SemilinearProblem make_semilinear_problem(GridPtr grid, double p, complexd mu, TimeProfile profile,
                                          WaveField initial_data, double horizon, std::size_t time_steps,
                                          bool dealias) {
    const int n = grid->dims();
    if (!(p > 1.0)) throw std::domain_error("semilinear: exponent must satisfy 1 < p");
    if (!(p < 4.0 / n + 1.0)) throw std::domain_error("semilinear: exponent must satisfy p < 4/n + 1");
    if (std::abs(profile.b(0.0)) > 1e-14) throw std::domain_error("semilinear: profile must vanish at t = 0");
    if (!(horizon > 0.0) || time_steps < 2) throw std::invalid_argument("semilinear: bad horizon or step count");
    if (initial_data.grid.get() != grid.get()) throw std::invalid_argument("semilinear: data/grid mismatch");

    SemilinearProblem problem;
    problem.grid = std::move(grid);
    problem.p = p;
    problem.mu = mu;
    problem.profile = std::move(profile);
    problem.initial_data = std::move(initial_data);
    problem.horizon = horizon;
    problem.time_steps = time_steps;
    problem.dealias = dealias;
    // The derived pair (q, p+1) must satisfy the admissibility identity.
    make_admissible_pair(problem.strichartz_q(), p + 1.0, n);
    return problem;
}

double solution_space_norm(const Trajectory& traj, const SemilinearProblem& problem) {
    MixedNormSpec sup_spec;
    sup_spec.time_exponent = std::numeric_limits<double>::infinity();
    sup_spec.space_exponent = 2.0;
    MixedNormSpec strichartz_spec;
    strichartz_spec.time_exponent = problem.strichartz_q();
    strichartz_spec.space_exponent = problem.p + 1.0;
    auto bp = problem.profile.bprime;
    strichartz_spec.time_weight = [bp](double t) { return std::abs(bp(t)); };
    return mixed_norm(traj, sup_spec) + mixed_norm(traj, strichartz_spec);
}

double solution_space_distance(const Trajectory& a, const Trajectory& b, const SemilinearProblem& problem) {
    if (a.fields.size() != b.fields.size()) throw std::invalid_argument("trajectory size mismatch");
    Trajectory diff = a;
    for (std::size_t j = 0; j < diff.fields.size(); ++j) diff.fields[j] = a.fields[j] - b.fields[j];
    return solution_space_norm(diff, problem);
}

std::pair<Trajectory, SolveDiagnostics> picard_solve(const SemilinearProblem& problem, double tol, int max_iter) {
    SolveDiagnostics diag;
    diag.horizon = problem.horizon;

    const Trajectory linear = free_flow(problem);
    Trajectory current = linear;
    for (int it = 1; it <= max_iter; ++it) {
        Trajectory next = apply_phi(problem, linear, current);
        double dist;
        try {
            dist = solution_space_distance(next, current, problem);
        } catch (const std::domain_error&) {
            // Iterates blew past double range: certainly not contracting.
            throw std::runtime_error("picard_solve: horizon too large (iterates diverged); reduce T");
        }
        if (!std::isfinite(dist))
            throw std::runtime_error("picard_solve: horizon too large (iterates diverged); reduce T");
        diag.iterations = it;
        if (!diag.distances.empty())
            diag.contraction_factors.push_back(dist / std::max(diag.distances.back(), 1e-300));
        diag.distances.push_back(dist);
        current = std::move(next);
        if (dist < tol) break;

        // Persistent growth means the horizon exceeds the contraction regime.
        const auto& f = diag.contraction_factors;
        if (f.size() >= 3 && f[f.size() - 1] >= 1.0 && f[f.size() - 2] >= 1.0 && f[f.size() - 3] >= 1.0)
            throw std::runtime_error("picard_solve: horizon too large (iterates not contracting); reduce T");
        if (it == max_iter)
            throw std::runtime_error("picard_solve: max_iter exceeded before reaching tolerance");
    }
    diag.final_residual = residual(current, problem);
    diag.solution_norm = solution_space_norm(current, problem);
    return {std::move(current), std::move(diag)};
}

double local_time_estimate(double data_norm, int dims, double mu_abs, double p, const TimeProfile& profile,
                           double strichartz_constant, double search_max) {
    if (!(p > 1.0) || !(p < 4.0 / dims + 1.0))
        throw std::domain_error("local_time_estimate: exponent outside 1 < p < 4/n + 1");
    const double exponent = 1.0 - dims * (p - 1.0) / 4.0;
    if (!(exponent > 0.0)) throw std::domain_error("local_time_estimate: horizon exponent must be positive");
    const double q = 4.0 * (p + 1.0) / (dims * (p - 1.0));
    const double qc = q / (q - 1.0);
    const double weight_exponent = q / (p * qc) - 1.0;
    const double radius = strichartz_constant * data_norm;

    auto contraction_margin = [&](double T) {
        double sup = 0.0;
        for (int i = 0; i <= 512; ++i) {
            const double t = T * i / 512.0;
            sup = std::max(sup, std::pow(std::abs(profile.bprime(t)), weight_exponent));
        }
        const double cT = std::pow(T, exponent) * sup;
        return 2.0 * cT * mu_abs * std::pow(radius, std::max(p - 1.0, 0.0));
    };

    double best = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double T = search_max * std::pow(2.0, -i);
        if (contraction_margin(T) < 1.0) {
            best = T;
            break;
        }
    }
    return best;
}

std::vector<ContinuityRow> data_continuity_experiment(const SemilinearProblem& problem, const WaveField& v0,
                                                      const std::vector<double>& deltas, double tol, int max_iter) {
    if (v0.grid.get() != problem.grid.get()) throw std::invalid_argument("data_continuity: grid mismatch");
    const auto [base, base_diag] = picard_solve(problem, tol, max_iter);
    (void)base_diag;

    MixedNormSpec sup_spec;
    sup_spec.time_exponent = std::numeric_limits<double>::infinity();
    sup_spec.space_exponent = 2.0;

    std::vector<ContinuityRow> rows;
    for (double delta : deltas) {
        if (!(delta > 0.0)) throw std::invalid_argument("data_continuity: deltas must be positive");
        SemilinearProblem perturbed = problem;
        WaveField shift = v0 - problem.initial_data;
        perturbed.initial_data = problem.initial_data;
        add_scaled(perturbed.initial_data, complexd(delta, 0.0), shift);
        const double data_dist = l2_distance(perturbed.initial_data, problem.initial_data);

        const auto [sol, diag] = picard_solve(perturbed, tol, max_iter);
        (void)diag;
        Trajectory diff = sol;
        for (std::size_t j = 0; j < diff.fields.size(); ++j) diff.fields[j] = sol.fields[j] - base.fields[j];
        const double sol_dist = mixed_norm(diff, sup_spec);
        rows.push_back({delta, data_dist, sol_dist, sol_dist / data_dist});
    }
    return rows;
}

double residual(const Trajectory& traj, const SemilinearProblem& problem) {
    // Fixed-point defect with direct per-target trapezoid sums in the spectral
    // domain (independent of the solver's prefix-summed accumulation), using
    // Parseval to avoid the inverse transforms.
    const Trajectory forcing = nonlinearity_trajectory(traj, problem);
    const Grid& g = *problem.grid;
    const std::size_t J = traj.steps();
    const std::size_t M = g.site_count();
    const double dt = traj.dt();

    std::vector<double> a(M);
    {
        const DispersionSymbol& lap = laplacian_symbol();
        par::for_each(M, [&](std::size_t k) { a[k] = lap.eval(g.mode_wavenumber(k)); });
    }
    std::vector<double> bval(J + 1), bpabs(J + 1);
    for (std::size_t j = 0; j <= J; ++j) {
        bval[j] = problem.profile.b(traj.time_at(j));
        bpabs[j] = std::abs(problem.profile.bprime(traj.time_at(j)));
    }

    std::vector<std::vector<complexd>> forcing_spec(J + 1, std::vector<complexd>(M));
    std::vector<std::vector<complexd>> traj_spec(J + 1, std::vector<complexd>(M));
    par::for_each(J + 1, [&](std::size_t s) {
        detail::fft_forward(g, forcing.fields[s].values.data(), forcing_spec[s].data());
        detail::fft_forward(g, traj.fields[s].values.data(), traj_spec[s].data());
    });
    std::vector<complexd> data_spec(M);
    detail::fft_forward(g, problem.initial_data.values.data(), data_spec.data());

    // Plain-DFT Parseval: ||f||_2^2 = dx^n N^-n sum_k |(F f)_k|^2.
    const double parseval = g.cell_volume() / static_cast<double>(M);
    const double worst_sq = par::max(J + 1, [&](std::size_t j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < M; ++k) {
            complexd integral(0.0, 0.0);
            for (std::size_t s = 0; s <= j; ++s) {
                const double w = (s == 0 || s == j) ? 0.5 * dt : dt;
                integral += w * bpabs[s] * std::polar(1.0, (bval[j] - bval[s]) * a[k]) * forcing_spec[s][k];
            }
            if (j == 0) integral = complexd(0.0, 0.0);
            const complexd expect = std::polar(1.0, bval[j] * a[k]) * data_spec[k] + problem.mu * integral;
            acc += std::norm(traj_spec[j][k] - expect);
        }
        return parseval * acc;
    });
    return std::sqrt(worst_sq);
}

}  // namespace dd

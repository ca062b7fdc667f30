#pragma once

#include "dd/propagator.hpp"
#include "dd/strichartz.hpp"

namespace dd {

/// Semilinear initial value problem solved by the fixed-point map
///   Phi(u)(t) = e^{i b(t) Delta} u0 + mu * integral_0^t |b'(s)| e^{i (b(t)-b(s)) Delta} |u|^{p-1} u ds
/// on the uniform grid over [0, T].
struct SemilinearProblem {
    GridPtr grid;
    double p = 3.0;             // nonlinearity exponent, 1 < p < 4/n + 1
    complexd mu{1.0, 0.0};
    TimeProfile profile;
    WaveField initial_data;
    double horizon = 0.5;       // T
    std::size_t time_steps = 512;
    // Collocation nonlinearity by default; the 2/3 rule can be switched on
    // when aliasing shows up in the residual pass.
    bool dealias = false;

    int dims() const { return grid->dims(); }
    double strichartz_q() const { return 4.0 * (p + 1.0) / (dims() * (p - 1.0)); }
};

/// Validates the strict exponent range, the derived admissible pair and
/// b(0) = 0; throws std::domain_error naming the violated constraint.
SemilinearProblem make_semilinear_problem(GridPtr grid, double p, complexd mu, TimeProfile profile,
                                          WaveField initial_data, double horizon, std::size_t time_steps,
                                          bool dealias = false);

struct SolveDiagnostics {
    int iterations = 0;
    std::vector<double> distances;            // X_T distance of successive iterates
    std::vector<double> contraction_factors;  // ratios of consecutive distances
    double final_residual = 0.0;              // independent fixed-point defect
    double solution_norm = 0.0;               // X_T norm of the returned solution
    double horizon = 0.0;
};

/// X_T norm: L^infty_t L^2_x plus the |b'|^{1/q}-weighted L^q_t L^{p+1}_x part.
double solution_space_norm(const Trajectory& traj, const SemilinearProblem& problem);
double solution_space_distance(const Trajectory& a, const Trajectory& b, const SemilinearProblem& problem);

/// Picard iteration from the free flow; stops when the X_T distance of
/// successive iterates drops below tol. Throws "horizon too large" when the
/// distances grow persistently, and on max_iter exhaustion.
std::pair<Trajectory, SolveDiagnostics> picard_solve(const SemilinearProblem& problem, double tol = 1e-12,
                                                     int max_iter = 64);

/// Largest dyadic-search horizon with 2 C(T) |mu| R^{p-1} < 1, where
/// C(T) = T^{1 - n(p-1)/4} sup_{[0,T]} |b'|^{q/(p q') - 1} and R = c ||u0||_2.
double local_time_estimate(double data_norm, int dims, double mu_abs, double p, const TimeProfile& profile,
                           double strichartz_constant, double search_max = 4.0);

struct ContinuityRow {
    double delta = 0.0;
    double data_distance = 0.0;
    double solution_distance = 0.0;  // sup-t L^2
    double ratio = 0.0;
};

/// Solves with data u0 and u0 + delta (v0 - u0) per delta and reports the
/// Lipschitz ratios of the sup-t L^2 solution distance to the data distance.
std::vector<ContinuityRow> data_continuity_experiment(const SemilinearProblem& problem, const WaveField& v0,
                                                      const std::vector<double>& deltas, double tol = 1e-12,
                                                      int max_iter = 64);

/// max_j || u(t_j) - Phi(u)(t_j) ||_2 recomputed with direct per-target
/// quadrature, independent of the solver's prefix-summed path.
double residual(const Trajectory& traj, const SemilinearProblem& problem);

/// |u|^{p-1} u evaluated pointwise on the lattice.
WaveField nonlinearity(const WaveField& u, double p);

/// Zeroes every mode with any signed index beyond N/3 (the 2/3 rule).
WaveField dealias_two_thirds(const WaveField& u);

}  // namespace dd

#include "dd/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dd/parallel.hpp"

namespace dd {
namespace {

double weighted_lp(const WaveField& f, const std::function<double(const Vec3&)>& omega, double p) {
    if (!omega) return lp_norm(f, p);
    const Grid& g = *f.grid;
    if (std::isinf(p)) {
        return par::max(f.size(), [&](std::size_t j) { return omega(g.site_position(j)) * std::abs(f.values[j]); });
    }
    const double s = par::sum(f.size(), [&](std::size_t j) {
        return std::pow(omega(g.site_position(j)) * std::abs(f.values[j]), p);
    });
    if (!std::isfinite(s)) throw std::domain_error("mixed_norm: non-finite integrand");
    return std::pow(g.cell_volume() * s, 1.0 / p);
}

std::vector<double> outer_time_integrand(const Trajectory& traj, const MixedNormSpec& spec) {
    const std::size_t J = traj.steps();
    std::vector<double> g(J + 1);
    for (std::size_t j = 0; j <= J; ++j) {
        const double w = spec.time_weight ? spec.time_weight(traj.time_at(j)) : 1.0;
        const double inner = weighted_lp(traj.fields[j], spec.spatial_weight, spec.space_exponent);
        g[j] = std::isinf(spec.time_exponent) ? inner : w * std::pow(inner, spec.time_exponent);
        if (!std::isfinite(g[j])) throw std::domain_error("mixed_norm: non-finite time integrand");
    }
    return g;
}

}  // namespace

double mixed_norm(const Trajectory& traj, const MixedNormSpec& spec) {
    if (traj.fields.empty()) throw std::invalid_argument("mixed_norm: empty trajectory");
    const std::size_t J = traj.steps();
    const double dt = traj.dt();

    if (spec.nesting == Nesting::time_outer) {
        const auto g = outer_time_integrand(traj, spec);
        if (std::isinf(spec.time_exponent)) return *std::max_element(g.begin(), g.end());
        double acc = 0.0;
        for (std::size_t j = 0; j <= J; ++j) acc += trapezoid_weight(j, J, dt) * g[j];
        return std::pow(acc, 1.0 / spec.time_exponent);
    }

    if (spec.nesting == Nesting::space_outer) {
        const Grid& grid = *traj.grid;
        const std::size_t M = grid.site_count();
        const double q = spec.time_exponent, p = spec.space_exponent;
        std::vector<double> per_site(M);
        par::for_each(M, [&](std::size_t i) {
            double acc = 0.0, mx = 0.0;
            for (std::size_t j = 0; j <= J; ++j) {
                const double w = spec.time_weight ? spec.time_weight(traj.time_at(j)) : 1.0;
                const double v = std::abs(traj.fields[j].values[i]);
                if (std::isinf(q)) {
                    mx = std::max(mx, v);
                } else {
                    acc += trapezoid_weight(j, J, dt) * w * std::pow(v, q);
                }
            }
            const double omega = spec.spatial_weight ? spec.spatial_weight(grid.site_position(i)) : 1.0;
            per_site[i] = omega * (std::isinf(q) ? mx : std::pow(acc, 1.0 / q));
        });
        if (std::isinf(p)) {
            double mx = 0.0;
            for (double v : per_site) mx = std::max(mx, v);
            return mx;
        }
        double acc = 0.0;
        for (double v : per_site) acc += std::pow(v, p);
        return std::pow(grid.cell_volume() * acc, 1.0 / p);
    }

    // sup_slice: reuse the dedicated smoothing norm.
    return smoothing_norm(traj, spec.time_weight, spec.slice_axis);
}

double smoothing_norm(const Trajectory& traj, const std::function<double(double)>& time_weight, int axis) {
    if (traj.fields.empty()) throw std::invalid_argument("smoothing_norm: empty trajectory");
    const Grid& grid = *traj.grid;
    if (axis < 0 || axis >= grid.dims()) throw std::out_of_range("smoothing_norm: axis out of range");
    const std::size_t J = traj.steps();
    const double dt = traj.dt();
    const std::size_t N = static_cast<std::size_t>(grid.points_per_dim());
    const double slice_measure = std::pow(grid.spacing(), grid.dims() - 1);

    // Row-major with axis 0 slowest: sites of slice s along `axis` are
    // flat = (P*N + s)*suffix + Q, P over the leading axes, Q over the trailing.
    std::size_t prefix = 1, suffix = 1;
    for (int d = 0; d < axis; ++d) prefix *= N;
    for (int d = axis + 1; d < grid.dims(); ++d) suffix *= N;

    std::vector<double> slice_integral(N, 0.0);
    for (std::size_t j = 0; j <= J; ++j) {
        const double w = (time_weight ? time_weight(traj.time_at(j)) : 1.0) * trapezoid_weight(j, J, dt);
        if (w == 0.0) continue;
        const WaveField& f = traj.fields[j];
        par::for_each(N, [&](std::size_t s) {
            double acc = 0.0;
            for (std::size_t P = 0; P < prefix; ++P) {
                const std::size_t base = (P * N + s) * suffix;
                for (std::size_t Q = 0; Q < suffix; ++Q) acc += std::norm(f.values[base + Q]);
            }
            slice_integral[s] += w * slice_measure * acc;
        });
    }
    double sup = 0.0;
    for (double v : slice_integral) sup = std::max(sup, v);
    return std::sqrt(sup);
}

double tail_decay(const Trajectory& traj, const MixedNormSpec& spec) {
    const auto g = outer_time_integrand(traj, spec);
    const double peak = *std::max_element(g.begin(), g.end());
    if (peak == 0.0) return 0.0;
    return std::max(g.front(), g.back()) / peak;
}

NormIdentityResult time_change_norm_identity(const WaveField& phi, const TimeProfile& profile,
                                             const WeightSymbol& sigma, const DispersionSymbol& symbol,
                                             double p, double window_lo, double window_hi,
                                             std::size_t steps, bool strict_capture) {
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("time_change_norm_identity: p must be finite >= 1");
    if (!(window_hi > window_lo)) throw std::invalid_argument("time_change_norm_identity: empty window");

    const WaveField weighted = apply_multiplier(sigma, phi);
    const Grid& grid = *phi.grid;
    const std::size_t M = grid.site_count();

    struct SideResult {
        double norm, tail;
    };
    auto side = [&](const TimeProfile& prof, double lo, double hi,
                    const std::function<double(double)>& wt) -> SideResult {
        Propagator prop(phi.grid, symbol, prof);
        const double dt = (hi - lo) / static_cast<double>(steps);
        std::vector<double> site_integral(M, 0.0);
        std::vector<double> aggregated(steps + 1, 0.0);
        for (std::size_t j = 0; j <= steps; ++j) {
            const double t = lo + dt * static_cast<double>(j);
            const double w = wt(t);
            const WaveField u = prop.at(weighted, t);
            const double trap = trapezoid_weight(j, steps, dt);
            double peak_j = 0.0;
            for (std::size_t i = 0; i < M; ++i) {
                const double contrib = w * std::pow(std::abs(u.values[i]), p);
                site_integral[i] += trap * contrib;
                if (contrib > peak_j) peak_j = contrib;
            }
            aggregated[j] = peak_j;
        }
        double sup = 0.0;
        for (double v : site_integral) sup = std::max(sup, v);
        const double peak = *std::max_element(aggregated.begin(), aggregated.end());
        const double tail = peak == 0.0 ? 0.0 : std::max(aggregated.front(), aggregated.back()) / peak;
        return {std::pow(sup, 1.0 / p), tail};
    };

    NormIdentityResult res;
    const auto lhs = side(profile, window_lo, window_hi,
                          [&profile](double t) { return std::abs(profile.bprime(t)); });

    // Image window: for monotone b this is [b(lo), b(hi)] sorted; in general
    // the envelope of b over the window.
    double s_min = profile.b(window_lo), s_max = s_min;
    const int probes = 4096;
    for (int i = 0; i <= probes; ++i) {
        const double v = profile.b(window_lo + (window_hi - window_lo) * i / probes);
        s_min = std::min(s_min, v);
        s_max = std::max(s_max, v);
    }
    if (!(s_max > s_min)) throw std::domain_error("time_change_norm_identity: profile image has empty interior");
    const TimeProfile unit = builtin_profile(ProfileKind::identity);
    const auto rhs = side(unit, s_min, s_max, [](double) { return 1.0; });

    res.lhs = lhs.norm;
    res.rhs = rhs.norm;
    res.lhs_tail = lhs.tail;
    res.rhs_tail = rhs.tail;
    res.s_lo = s_min;
    res.s_hi = s_max;
    if (strict_capture && (res.lhs_tail > 1e-8 || res.rhs_tail > 1e-8))
        throw std::domain_error("time_change_norm_identity: tail not captured by the window");
    return res;
}

}  // namespace dd

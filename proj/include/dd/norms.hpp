#pragma once

#include <functional>

#include "dd/propagator.hpp"
#include "dd/symbols.hpp"

namespace dd {

enum class Nesting { time_outer, space_outer, sup_slice };

/// Weighted mixed space-time norm specification. The time weight multiplies
/// the q-th power of the inner norm, so w(t) = |b'(t)| realizes the
/// |b'|^{1/q}-weighted norms; for q = infinity the weight is ignored and the
/// value is the max over the time grid. The spatial weight multiplies the
/// field inside the L^p_x factor.
struct MixedNormSpec {
    double time_exponent = 2.0;   // q
    double space_exponent = 2.0;  // p
    std::function<double(double)> time_weight;       // defaults to 1
    std::function<double(const Vec3&)> spatial_weight;  // defaults to 1
    Nesting nesting = Nesting::time_outer;
    int slice_axis = 0;  // sup_slice only
};

double mixed_norm(const Trajectory& traj, const MixedNormSpec& spec);

/// sup over lattice values of x_axis of the weighted L^2 integral over time
/// and the remaining axes. Spectral weights are expected to be applied to the
/// trajectory data already.
double smoothing_norm(const Trajectory& traj, const std::function<double(double)>& time_weight, int axis);

/// Endpoint-decay diagnostic of the outer time integrand: max(first, last)
/// sample over the peak sample. Small values mean the declared window
/// captured the time decay.
double tail_decay(const Trajectory& traj, const MixedNormSpec& spec);

struct NormIdentityResult {
    double lhs = 0.0;        // sup-site weighted L^p_t norm of the b-flow over the window
    double rhs = 0.0;        // same data under the unit-speed flow over the image window
    double lhs_tail = 0.0;   // endpoint/peak of the aggregated t-integrand
    double rhs_tail = 0.0;
    double s_lo = 0.0, s_hi = 0.0;  // image window actually used for the rhs
};

/// Discrete two-sided form of the time-change comparison: the left side is
/// sup_x (integral over the window of |b'| |sigma(D) e^{i b(t) a(D)} phi|^p)^{1/p},
/// the right side the identical quantity for the unit-speed flow over the
/// exact b-image of the window, so for monotone b the two sides agree up to
/// quadrature error. strict_capture enforces endpoint integrand decay below
/// 1e-8 of peak on both sides ("tail not captured" otherwise) for callers
/// reading the result as a whole-line norm.
NormIdentityResult time_change_norm_identity(const WaveField& phi, const TimeProfile& profile,
                                             const WeightSymbol& sigma, const DispersionSymbol& symbol,
                                             double p, double window_lo, double window_hi,
                                             std::size_t steps, bool strict_capture = false);

/// Composite trapezoid weight for node j of steps+1 uniform nodes.
inline double trapezoid_weight(std::size_t j, std::size_t steps, double dt) {
    return (j == 0 || j == steps) ? 0.5 * dt : dt;
}

}  // namespace dd

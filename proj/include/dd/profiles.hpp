#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dd/grid.hpp"

namespace dd {

/// Time-degeneracy profile b with b(0) = 0 and its derivative b' = B.
struct TimeProfile {
    std::string label;
    std::function<double(double)> b;
    std::function<double(double)> bprime;
    std::function<double(double)> closed_form_inverse;  // may be empty
    // Declared domain of interest; +-inf for whole-line profiles.
    double domain_lo = -std::numeric_limits<double>::infinity();
    double domain_hi = std::numeric_limits<double>::infinity();
};

enum class ProfileKind { power, signed_power, exp_profile, sine, cos_minus_one, sincos, identity };

ProfileKind profile_kind_from_string(const std::string& s);

/// power(alpha): b = t^{alpha+1}/(alpha+1) on [0,inf); signed_power(alpha):
/// b = t|t|^alpha/(alpha+1) on R; exp_profile: b = e^t - t - 1 on [0,inf);
/// sine / cos_minus_one / sincos: the trigonometric profiles; identity: b = t.
TimeProfile builtin_profile(ProfileKind kind, double alpha = 0.0);

struct ProfileClass {
    enum class Kind { StrictlyMonotone, FiniteCritical, InfiniteCritical } kind;
    int direction = 0;                    // +1 increasing, -1 decreasing (monotone cases)
    std::vector<double> critical_points;  // zeros of b' in the classified window
    bool satisfies_H = false;
    // InfiniteCritical: k-th positive / negative critical time, k >= 1.
    std::function<double(int)> positive_times;
    std::function<double(int)> negative_times;

    int k() const { return static_cast<int>(critical_points.size()); }
};

/// Classifies b on [lo, hi] by dense sampling of b' (>= 4096 points) with
/// bisection refinement of the zeros to 1e-10. Monotonicity of b is what
/// decides StrictlyMonotone: zeros of b' that do not break monotonicity
/// (b = t^3/3 at t = 0) stay classified as monotone. Throws on plateaus where
/// |b'| < 1e-12 over an interval of positive length.
ProfileClass classify(const TimeProfile& profile, double lo, double hi);

/// Known infinite critical sequences for the trigonometric builtins on R.
ProfileClass infinite_critical_class(const TimeProfile& profile);

/// Solves b(t) = s on the declared domain via the closed form when present,
/// bracketed bisection otherwise; |b(t) - s| <= 1e-12 (1 + |s|).
double invert(const TimeProfile& profile, double s);

/// Summable interval weight c for the infinite-critical comparison; the bound
/// is sum_k sup over the induced partition of |c|, per time direction.
struct SummableWeight {
    std::function<double(double)> c;
    double positive_sum = 0.0;
    double negative_sum = 0.0;
    double bound() const { return positive_sum > negative_sum ? positive_sum : negative_sum; }
};

/// c(t) = (1+t^2)^{-1} with interval sums accumulated from the class
/// generators until the tail drops below 1e-8 of the head.
SummableWeight default_summable_weight(const ProfileClass& cls);

struct LemmaConstant {
    double value = 1.0;
    bool trivial = false;  // set when the class is strictly monotone (constant 1)
};

/// (k+1)^{1/p} for a finite-critical class; for the infinite case use the
/// overload with the summable weight, giving (2C)^{1/p} (or C_side^{1/p} for
/// windows on one side of 0 only).
LemmaConstant lemma_constant(const ProfileClass& cls, double p);
LemmaConstant lemma_constant(const SummableWeight& weight, double p, bool one_sided = false);

}  // namespace dd

#include "dd/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dd {
namespace {

constexpr double kRootTol = 1e-10;
constexpr double kPlateauTol = 1e-12;
constexpr double kWitnessTime = 1e7;
constexpr double kWitnessLevel = 1e6;

double bisect_root(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > kRootTol; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

// Refine a touching zero (local minimum of |b'|) by golden-section search.
double refine_touch(const std::function<double(double)>& f, double a, double b) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = std::abs(f(x1)), f2 = std::abs(f(x2));
    while (b - a > kRootTol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = std::abs(f(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = std::abs(f(x2));
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

ProfileKind profile_kind_from_string(const std::string& s) {
    if (s == "power") return ProfileKind::power;
    if (s == "signed_power") return ProfileKind::signed_power;
    if (s == "exp_profile") return ProfileKind::exp_profile;
    if (s == "sine") return ProfileKind::sine;
    if (s == "cos_minus_one") return ProfileKind::cos_minus_one;
    if (s == "sincos") return ProfileKind::sincos;
    if (s == "identity") return ProfileKind::identity;
    throw std::invalid_argument("unknown profile kind: " + s);
}

TimeProfile builtin_profile(ProfileKind kind, double alpha) {
    TimeProfile p;
    switch (kind) {
        case ProfileKind::power: {
            if (alpha < 0.0) throw std::invalid_argument("power profile: alpha must be >= 0");
            p.label = "power(" + std::to_string(alpha) + ")";
            p.b = [alpha](double t) { return std::pow(t, alpha + 1.0) / (alpha + 1.0); };
            p.bprime = [alpha](double t) { return alpha == 0.0 ? 1.0 : std::pow(t, alpha); };
            p.closed_form_inverse = [alpha](double s) { return std::pow((alpha + 1.0) * s, 1.0 / (alpha + 1.0)); };
            p.domain_lo = 0.0;
            break;
        }
        case ProfileKind::signed_power: {
            if (alpha < 0.0) throw std::invalid_argument("signed_power profile: alpha must be >= 0");
            p.label = "signed_power(" + std::to_string(alpha) + ")";
            p.b = [alpha](double t) { return t * std::pow(std::abs(t), alpha) / (alpha + 1.0); };
            p.bprime = [alpha](double t) { return alpha == 0.0 ? 1.0 : std::pow(std::abs(t), alpha); };
            p.closed_form_inverse = [alpha](double s) {
                const double mag = std::pow((alpha + 1.0) * std::abs(s), 1.0 / (alpha + 1.0));
                return s < 0.0 ? -mag : mag;
            };
            break;
        }
        case ProfileKind::exp_profile:
            p.label = "exp_profile";
            p.b = [](double t) { return std::expm1(t) - t; };
            p.bprime = [](double t) { return std::expm1(t); };
            p.domain_lo = 0.0;
            break;
        case ProfileKind::sine:
            p.label = "sine";
            p.b = [](double t) { return std::sin(t); };
            p.bprime = [](double t) { return std::cos(t); };
            break;
        case ProfileKind::cos_minus_one:
            p.label = "cos_minus_one";
            p.b = [](double t) { return std::cos(t) - 1.0; };
            p.bprime = [](double t) { return -std::sin(t); };
            break;
        case ProfileKind::sincos:
            p.label = "sincos";
            p.b = [](double t) { return std::sin(t) * std::cos(t); };
            p.bprime = [](double t) { return std::cos(2.0 * t); };
            break;
        case ProfileKind::identity:
            p.label = "identity";
            p.b = [](double t) { return t; };
            p.bprime = [](double) { return 1.0; };
            p.closed_form_inverse = [](double s) { return s; };
            break;
    }
    return p;
}

ProfileClass classify(const TimeProfile& profile, double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("classify: window must be a finite interval");
    const int samples = 4096;
    const double dt = (hi - lo) / samples;
    std::vector<double> bp(samples + 1), bv(samples + 1);
    double bp_scale = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = lo + i * dt;
        bp[static_cast<std::size_t>(i)] = profile.bprime(t);
        bv[static_cast<std::size_t>(i)] = profile.b(t);
        bp_scale = std::max(bp_scale, std::abs(bp[static_cast<std::size_t>(i)]));
    }
    if (bp_scale == 0.0) throw std::domain_error("classify: degenerate-plateau (b' vanishes on the window)");

    // Plateau guard: |b'| below tolerance across consecutive samples.
    int run = 0;
    for (int i = 0; i <= samples; ++i) {
        run = std::abs(bp[static_cast<std::size_t>(i)]) < kPlateauTol ? run + 1 : 0;
        if (run >= 3) throw std::domain_error("classify: degenerate-plateau (b' below 1e-12 on an interval)");
    }

    // Zeros of b': sign changes by bisection, touching zeros by local |b'| minima.
    std::vector<double> zeros;
    for (int i = 0; i < samples; ++i) {
        const double a = bp[static_cast<std::size_t>(i)], b = bp[static_cast<std::size_t>(i + 1)];
        if (a == 0.0) {
            zeros.push_back(lo + i * dt);
        } else if ((a < 0.0) != (b < 0.0)) {
            zeros.push_back(bisect_root(profile.bprime, lo + i * dt, lo + (i + 1) * dt));
        }
    }
    for (int i = 1; i < samples; ++i) {
        const double am = std::abs(bp[static_cast<std::size_t>(i)]);
        if (am < std::abs(bp[static_cast<std::size_t>(i - 1)]) && am <= std::abs(bp[static_cast<std::size_t>(i + 1)]) &&
            am < 1e-4 * bp_scale) {
            const double t0 = refine_touch(profile.bprime, lo + (i - 1) * dt, lo + (i + 1) * dt);
            if (std::abs(profile.bprime(t0)) < kRootTol * std::max(1.0, bp_scale)) zeros.push_back(t0);
        }
    }
    std::sort(zeros.begin(), zeros.end());
    zeros.erase(std::unique(zeros.begin(), zeros.end(),
                            [](double a, double b) { return std::abs(a - b) < 10.0 * kRootTol; }),
                zeros.end());

    // Monotonicity of b decides the monotone class even when b' touches zero.
    bool increasing = true, decreasing = true;
    for (int i = 0; i < samples; ++i) {
        if (!(bv[static_cast<std::size_t>(i + 1)] > bv[static_cast<std::size_t>(i)])) increasing = false;
        if (!(bv[static_cast<std::size_t>(i + 1)] < bv[static_cast<std::size_t>(i)])) decreasing = false;
    }

    ProfileClass cls;
    if (increasing || decreasing) {
        cls.kind = ProfileClass::Kind::StrictlyMonotone;
        cls.direction = increasing ? 1 : -1;

        // Condition (H) surrogate: b(0) = 0, monotone out to the witness time
        // along every unbounded domain end, and |b| beyond the witness level there.
        bool h = std::abs(profile.b(0.0)) <= 1e-14;
        bool any_end = false;
        for (const int side : {-1, 1}) {
            const double end = side > 0 ? profile.domain_hi : profile.domain_lo;
            if (!std::isinf(end)) continue;
            any_end = true;
            double prev = profile.b(side > 0 ? hi : lo);
            double t = std::max(std::max(std::abs(hi), std::abs(lo)), 1.0);
            bool ok = true;
            bool diverged = false;
            while (t < kWitnessTime) {
                t *= 2.0;
                const double val = profile.b(side * t);
                if (std::isinf(val)) {  // overflow counts as the divergence witness
                    diverged = true;
                    break;
                }
                if (increasing ? (side > 0 ? val <= prev : val >= prev)
                               : (side > 0 ? val >= prev : val <= prev))
                    ok = false;
                prev = val;
            }
            if (!diverged && !(std::abs(profile.b(side * kWitnessTime)) > kWitnessLevel)) ok = false;
            h = h && ok;
        }
        cls.satisfies_H = h && any_end;
    } else {
        cls.kind = ProfileClass::Kind::FiniteCritical;
        cls.critical_points = zeros;
    }
    return cls;
}

ProfileClass infinite_critical_class(const TimeProfile& profile) {
    ProfileClass cls;
    cls.kind = ProfileClass::Kind::InfiniteCritical;
    if (profile.label == "sine") {
        cls.positive_times = [](int k) { return M_PI_2 + (k - 1) * M_PI; };
        cls.negative_times = [](int k) { return -M_PI_2 - (k - 1) * M_PI; };
    } else if (profile.label == "cos_minus_one") {
        cls.positive_times = [](int k) { return k * M_PI; };
        cls.negative_times = [](int k) { return -k * M_PI; };
    } else if (profile.label == "sincos") {
        cls.positive_times = [](int k) { return M_PI_4 + (k - 1) * M_PI_2; };
        cls.negative_times = [](int k) { return -M_PI_4 - (k - 1) * M_PI_2; };
    } else {
        throw std::invalid_argument("no built-in infinite critical sequence for profile " + profile.label);
    }
    return cls;
}

double invert(const TimeProfile& profile, double s) {
    if (profile.closed_form_inverse) {
        const double t = profile.closed_form_inverse(s);
        if (std::abs(profile.b(t) - s) > 1e-12 * (1.0 + std::abs(s)))
            throw std::domain_error("invert: closed form failed accuracy check");
        return t;
    }
    const double lo_lim = std::max(profile.domain_lo, -1e12);
    const double hi_lim = std::min(profile.domain_hi, 1e12);
    // Establish direction from two domain points.
    const double t0 = std::max(lo_lim, std::min(hi_lim, 0.0));
    double a = t0, b = std::min(hi_lim, t0 + 1.0);
    const bool increasing = profile.b(b) > profile.b(a);

    auto g = [&](double t) { return increasing ? profile.b(t) - s : s - profile.b(t); };
    // Expand the bracket geometrically inside the domain.
    double left = t0, right = t0, step = 1.0;
    while (g(right) < 0.0 && right < hi_lim) right = std::min(hi_lim, right + step), step *= 2.0;
    step = 1.0;
    while (g(left) > 0.0 && left > lo_lim) left = std::max(lo_lim, left - step), step *= 2.0;
    if (g(left) > 0.0 || g(right) < 0.0) throw std::domain_error("invert: value out of range for profile " + profile.label);

    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (left + right);
        if (std::abs(profile.b(mid) - s) <= 1e-12 * (1.0 + std::abs(s))) return mid;
        (g(mid) < 0.0 ? left : right) = mid;
    }
    const double t = 0.5 * (left + right);
    if (std::abs(profile.b(t) - s) > 1e-10 * (1.0 + std::abs(s)))
        throw std::domain_error("invert: bisection failed to reach tolerance");
    return t;
}

SummableWeight default_summable_weight(const ProfileClass& cls) {
    if (cls.kind != ProfileClass::Kind::InfiniteCritical || !cls.positive_times || !cls.negative_times)
        throw std::invalid_argument("default_summable_weight: class lacks critical sequences");
    SummableWeight w;
    w.c = [](double t) { return 1.0 / (1.0 + t * t); };
    // sup over [t_k, t_{k+1}) of the even, decreasing-from-0 weight is its
    // value at the interval end nearer to 0.
    auto accumulate = [&w](const std::function<double(int)>& times, double sign) {
        double total = w.c(0.0);  // interval [t_0 = 0, t_1)
        for (int k = 1; k < 100000; ++k) {
            const double term = w.c(sign * times(k));
            total += term;
            if (term < 1e-8 * total) break;
        }
        return total;
    };
    w.positive_sum = accumulate(cls.positive_times, 1.0);
    w.negative_sum = accumulate(cls.negative_times, 1.0);
    return w;
}

LemmaConstant lemma_constant(const ProfileClass& cls, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lemma_constant: p must be >= 1");
    if (cls.kind == ProfileClass::Kind::StrictlyMonotone) return LemmaConstant{1.0, true};
    if (cls.kind == ProfileClass::Kind::FiniteCritical)
        return LemmaConstant{std::pow(cls.k() + 1.0, 1.0 / p), false};
    throw std::invalid_argument("lemma_constant: infinite-critical class needs a summable weight");
}

LemmaConstant lemma_constant(const SummableWeight& weight, double p, bool one_sided) {
    if (!(p >= 1.0)) throw std::invalid_argument("lemma_constant: p must be >= 1");
    const double c = one_sided ? weight.positive_sum : 2.0 * weight.bound();
    return LemmaConstant{std::pow(c, 1.0 / p), false};
}

}  // namespace dd

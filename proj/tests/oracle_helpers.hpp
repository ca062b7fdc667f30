#pragma once

// Test-side oracles and data builders shared across suites. The split-step
// integrator here is the independent reference for the Picard solver: it
// integrates d/dtau v = i Lap v + mu |v|^{p-1} v (p = 3) directly on the
// substituted time grid tau_j = b(t_j).

#include <cmath>
#include <vector>

#include "dd/family.hpp"
#include "dd/propagator.hpp"

namespace oracle {

using dd::complexd;
using dd::Vec3;
using dd::WaveField;

inline WaveField random_field(dd::GridPtr grid, std::uint64_t seed) {
    dd::SeededUniform rng(seed);
    WaveField f = dd::zero_field(std::move(grid));
    for (auto& v : f.values) v = complexd(rng.next_gaussian(), rng.next_gaussian());
    return f;
}

// Closed-form flow of the pointwise modulus ODE r' = Re(mu) r^3, theta' = Im(mu) r^2.
inline WaveField cubic_gain_step(const WaveField& v, complexd mu, double h) {
    WaveField out = v;
    const double mr = mu.real(), mi = mu.imag();
    for (auto& z : out.values) {
        const double r0 = std::abs(z);
        if (r0 == 0.0) continue;
        double scale, dtheta;
        if (mr != 0.0) {
            const double g = 1.0 - 2.0 * mr * r0 * r0 * h;
            scale = 1.0 / std::sqrt(g);
            dtheta = -(mi / (2.0 * mr)) * std::log(g);
        } else {
            scale = 1.0;
            dtheta = mi * r0 * r0 * h;
        }
        z *= scale * std::polar(1.0, dtheta);
    }
    return out;
}

// Strang splitting on an arbitrary monotone time grid; second order in the
// largest step.
inline std::vector<WaveField> split_step_cubic(const WaveField& u0, complexd mu, const std::vector<double>& tau) {
    const dd::TimeProfile unit = dd::builtin_profile(dd::ProfileKind::identity);
    const dd::DispersionSymbol lap = dd::builtin_symbol(dd::SymbolKind::laplacian, 2.0);
    std::vector<WaveField> out;
    out.reserve(tau.size());
    out.push_back(u0);
    WaveField v = u0;
    for (std::size_t j = 1; j < tau.size(); ++j) {
        const double h = tau[j] - tau[j - 1];
        v = cubic_gain_step(v, mu, 0.5 * h);
        v = dd::evolve(v, unit, lap, h);
        v = cubic_gain_step(v, mu, 0.5 * h);
        out.push_back(v);
    }
    return out;
}

// Two-dimensional members whose spectra stay clear of the xi_2 = 0 phase
// corner of the directional symbol.
inline std::vector<dd::FamilyMember> x2_offset_family() {
    std::vector<dd::FamilyMember> fam;
    struct Spec {
        double k1, k2;
    };
    for (const Spec spec : {Spec{0.0, 5.0}, Spec{2.0, 5.0}, Spec{-1.0, 6.0}}) {
        const double k1 = spec.k1, k2 = spec.k2;
        fam.push_back({"offset_k" + std::to_string(static_cast<int>(k1)) + "_" + std::to_string(static_cast<int>(k2)),
                       [k1, k2](const Vec3& x) {
                           return std::polar(std::exp(-dd::norm_sq(x) / 1.44), k1 * x[0] + k2 * x[1]);
                       }});
    }
    return fam;
}

// Compact three-dimensional members resolvable on toy grids.
inline std::vector<dd::FamilyMember> compact_3d_family() {
    return {
        {"gauss3_w1.5", [](const Vec3& x) { return complexd(std::exp(-dd::norm_sq(x) / 2.25), 0.0); }},
        {"gauss3_w2", [](const Vec3& x) { return complexd(std::exp(-dd::norm_sq(x) / 4.0), 0.0); }},
        {"mod3_k1", [](const Vec3& x) { return std::polar(std::exp(-dd::norm_sq(x) / 2.25), x[0] + 0.5 * x[2]); }},
    };
}

}  // namespace oracle

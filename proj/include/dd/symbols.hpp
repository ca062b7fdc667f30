#pragma once

#include <functional>
#include <optional>
#include <string>

#include "dd/grid.hpp"

namespace dd {

/// Real dispersion symbol a(xi) with its analytic gradient. Values at xi = 0
/// are the continuous extensions (0 for homogeneous powers with m > 0); the
/// gradient at nonsmooth points is set to 0 and such modes are skipped by the
/// consumers that divide by it.
struct DispersionSymbol {
    std::string label;
    double order = 0.0;  // homogeneity degree m
    bool radial = false;
    std::function<double(const Vec3&)> eval;
    std::function<Vec3(const Vec3&)> gradient;
    // d/drho of the radial profile a(rho); only set when radial.
    std::function<double(double)> radial_deriv;

    double grad1(const Vec3& xi) const { return gradient(xi)[0]; }
};

enum class SymbolKind { radial_power, directional, saddle, laplacian };

SymbolKind symbol_kind_from_string(const std::string& s);

/// radial_power: |xi|^m; directional: xi_1 |xi'|^{m-1}; saddle: |xi_1|^m - |xi'|^m;
/// laplacian: -|xi|^2 (so the Schroedinger flow multiplier is e^{-i b(t) |xi|^2}).
DispersionSymbol builtin_symbol(SymbolKind kind, double m);

/// Nonnegative spectral weight sigma(xi); cutoffs chi take values in {0,1}.
struct WeightSymbol {
    std::string label;
    std::function<double(const Vec3&)> eval;
};

WeightSymbol unit_weight();
WeightSymbol spectral_power(double exponent);            // |xi|^gamma, 0 at the zero mode
WeightSymbol axis_spectral_power(int axis, double exponent);  // |xi_axis|^gamma
WeightSymbol cutoff_halfspace(int sign);                 // chi_{sign * xi_1 > 0}
WeightSymbol cutoff_ball(double radius);                 // chi_{|xi| <= radius}
WeightSymbol cutoff_annulus(double r_inner, double r_outer);
WeightSymbol product(const WeightSymbol& a, const WeightSymbol& b);

/// Spatial weight omega(x) >= 0; finite at every site on the cell-centered grid.
struct SpatialWeight {
    std::string label;
    std::function<double(const Vec3&)> eval;
};

SpatialWeight unit_spatial_weight();
SpatialWeight bracket_power(double exponent);            // <x>^e = (1+|x|^2)^{e/2}
SpatialWeight abs_power(double exponent);                // |x|^e
SpatialWeight axis_bracket_power(int axis, double exponent);  // <x_axis>^e

/// Spectral action sigma(D) f.
WaveField apply_multiplier(const WeightSymbol& w, const WaveField& f);
/// Pointwise product omega(x) f(x).
WaveField apply_spatial_weight(const SpatialWeight& w, const WaveField& f);

struct ComparisonResult {
    double constant = 0.0;        // sampled sup of the weighted symbol ratio
    bool infinite = false;        // sigma != 0 met a vanishing denominator
    std::size_t support_points = 0;  // modes that entered the sup
};

/// Smallest A with |sigma|/|d_1 a|^{1/2} <= A |tau|/|d_1 atilde|^{1/2} over the
/// grid modes in supp chi; modes where either xi_1-derivative vanishes are
/// skipped. Throws if the effective support is empty.
ComparisonResult comparison_constant(const WeightSymbol& sigma, const DispersionSymbol& a,
                                     const WeightSymbol& tau, const DispersionSymbol& atilde,
                                     const WeightSymbol& chi, const Grid& grid);

/// Radial variant: the ratio uses d/drho of the radial profiles, sampled at
/// the grid's mode moduli inside supp chi. Requires both symbols radial.
ComparisonResult radial_comparison_constant(const WeightSymbol& sigma, const DispersionSymbol& a,
                                            const WeightSymbol& tau, const DispersionSymbol& atilde,
                                            const WeightSymbol& chi, const Grid& grid);

}  // namespace dd

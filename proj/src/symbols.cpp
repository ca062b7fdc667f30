#include "dd/symbols.hpp"

#include <cmath>
#include <stdexcept>

#include "dd/spectral.hpp"

namespace dd {
namespace {

double prime_norm(const Vec3& xi) {  // |xi'| over the trailing components
    return std::sqrt(xi[1] * xi[1] + xi[2] * xi[2]);
}

double pow_or_zero(double base, double expo) {
    if (base == 0.0) return 0.0;  // continuous extension for expo > 0, skipped mode otherwise
    return std::pow(base, expo);
}

}  // namespace

SymbolKind symbol_kind_from_string(const std::string& s) {
    if (s == "radial_power") return SymbolKind::radial_power;
    if (s == "directional") return SymbolKind::directional;
    if (s == "saddle") return SymbolKind::saddle;
    if (s == "laplacian") return SymbolKind::laplacian;
    throw std::invalid_argument("unknown symbol kind: " + s);
}

DispersionSymbol builtin_symbol(SymbolKind kind, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("builtin_symbol: order must be positive");
    DispersionSymbol s;
    s.order = m;
    switch (kind) {
        case SymbolKind::radial_power:
            s.label = "radial_power(" + std::to_string(m) + ")";
            s.radial = true;
            s.eval = [m](const Vec3& xi) { return pow_or_zero(norm(xi), m); };
            s.gradient = [m](const Vec3& xi) {
                const double r = norm(xi);
                if (r == 0.0) return Vec3{0.0, 0.0, 0.0};
                const double scale = m * std::pow(r, m - 2.0);
                return Vec3{scale * xi[0], scale * xi[1], scale * xi[2]};
            };
            s.radial_deriv = [m](double rho) { return rho == 0.0 ? 0.0 : m * std::pow(rho, m - 1.0); };
            break;
        case SymbolKind::directional:
            s.label = "directional(" + std::to_string(m) + ")";
            s.eval = [m](const Vec3& xi) { return xi[0] * pow_or_zero(prime_norm(xi), m - 1.0); };
            s.gradient = [m](const Vec3& xi) {
                const double rp = prime_norm(xi);
                Vec3 g{pow_or_zero(rp, m - 1.0), 0.0, 0.0};
                if (rp > 0.0) {
                    const double scale = xi[0] * (m - 1.0) * std::pow(rp, m - 3.0);
                    g[1] = scale * xi[1];
                    g[2] = scale * xi[2];
                }
                return g;
            };
            break;
        case SymbolKind::saddle:
            s.label = "saddle(" + std::to_string(m) + ")";
            s.eval = [m](const Vec3& xi) {
                return pow_or_zero(std::abs(xi[0]), m) - pow_or_zero(prime_norm(xi), m);
            };
            s.gradient = [m](const Vec3& xi) {
                Vec3 g{0.0, 0.0, 0.0};
                if (xi[0] != 0.0)
                    g[0] = m * std::pow(std::abs(xi[0]), m - 1.0) * (xi[0] > 0.0 ? 1.0 : -1.0);
                const double rp = prime_norm(xi);
                if (rp > 0.0) {
                    const double scale = -m * std::pow(rp, m - 2.0);
                    g[1] = scale * xi[1];
                    g[2] = scale * xi[2];
                }
                return g;
            };
            break;
        case SymbolKind::laplacian:
            s.label = "laplacian";
            s.order = 2.0;
            s.radial = true;
            s.eval = [](const Vec3& xi) { return -norm_sq(xi); };
            s.gradient = [](const Vec3& xi) { return Vec3{-2.0 * xi[0], -2.0 * xi[1], -2.0 * xi[2]}; };
            s.radial_deriv = [](double rho) { return -2.0 * rho; };
            break;
    }
    return s;
}

WeightSymbol unit_weight() {
    return WeightSymbol{"1", [](const Vec3&) { return 1.0; }};
}

WeightSymbol spectral_power(double exponent) {
    return WeightSymbol{"|xi|^" + std::to_string(exponent),
                        [exponent](const Vec3& xi) { return pow_or_zero(norm(xi), exponent); }};
}

WeightSymbol axis_spectral_power(int axis, double exponent) {
    return WeightSymbol{"|xi_" + std::to_string(axis + 1) + "|^" + std::to_string(exponent),
                        [axis, exponent](const Vec3& xi) {
                            return pow_or_zero(std::abs(xi[static_cast<std::size_t>(axis)]), exponent);
                        }};
}

WeightSymbol cutoff_halfspace(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("cutoff_halfspace: sign must be +-1");
    return WeightSymbol{sign > 0 ? "chi_{xi1>0}" : "chi_{xi1<0}",
                        [sign](const Vec3& xi) { return sign * xi[0] > 0.0 ? 1.0 : 0.0; }};
}

WeightSymbol cutoff_ball(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("cutoff_ball: radius must be positive");
    return WeightSymbol{"chi_{|xi|<=" + std::to_string(radius) + "}",
                        [radius](const Vec3& xi) { return norm(xi) <= radius ? 1.0 : 0.0; }};
}

WeightSymbol cutoff_annulus(double r_inner, double r_outer) {
    if (!(0.0 <= r_inner && r_inner < r_outer)) throw std::invalid_argument("cutoff_annulus: bad radii");
    return WeightSymbol{"chi_annulus", [r_inner, r_outer](const Vec3& xi) {
                            const double r = norm(xi);
                            return (r >= r_inner && r <= r_outer) ? 1.0 : 0.0;
                        }};
}

WeightSymbol product(const WeightSymbol& a, const WeightSymbol& b) {
    auto ea = a.eval;
    auto eb = b.eval;
    return WeightSymbol{a.label + "*" + b.label,
                        [ea, eb](const Vec3& xi) { return ea(xi) * eb(xi); }};
}

SpatialWeight unit_spatial_weight() {
    return SpatialWeight{"1", [](const Vec3&) { return 1.0; }};
}

SpatialWeight bracket_power(double exponent) {
    return SpatialWeight{"<x>^" + std::to_string(exponent), [exponent](const Vec3& x) {
                             return std::pow(1.0 + norm_sq(x), 0.5 * exponent);
                         }};
}

SpatialWeight abs_power(double exponent) {
    return SpatialWeight{"|x|^" + std::to_string(exponent),
                         [exponent](const Vec3& x) { return std::pow(norm(x), exponent); }};
}

SpatialWeight axis_bracket_power(int axis, double exponent) {
    return SpatialWeight{"<x_" + std::to_string(axis + 1) + ">^" + std::to_string(exponent),
                         [axis, exponent](const Vec3& x) {
                             const double c = x[static_cast<std::size_t>(axis)];
                             return std::pow(1.0 + c * c, 0.5 * exponent);
                         }};
}

WaveField apply_multiplier(const WeightSymbol& w, const WaveField& f) {
    auto eval = w.eval;
    return apply_mode_multiplier(f, [eval](const Vec3& xi) { return complexd(eval(xi), 0.0); });
}

WaveField apply_spatial_weight(const SpatialWeight& w, const WaveField& f) {
    WaveField out = f;
    const Grid& g = *f.grid;
    for (std::size_t j = 0; j < out.size(); ++j) out.values[j] *= w.eval(g.site_position(j));
    require_finite(out);
    return out;
}

namespace {

ComparisonResult comparison_impl(const WeightSymbol& sigma, const WeightSymbol& tau,
                                 const WeightSymbol& chi, const Grid& grid,
                                 const std::function<double(const Vec3&)>& da,
                                 const std::function<double(const Vec3&)>& datilde) {
    ComparisonResult res;
    for (std::size_t k = 0; k < grid.site_count(); ++k) {
        const Vec3 xi = grid.mode_wavenumber(k);
        if (chi.eval(xi) == 0.0) continue;
        const double ga = da(xi);
        const double gt = datilde(xi);
        if (ga == 0.0 || gt == 0.0) continue;  // outside the quantifier
        ++res.support_points;
        const double lhs = sigma.eval(xi) / std::sqrt(std::abs(ga));
        const double rhs = tau.eval(xi) / std::sqrt(std::abs(gt));
        if (rhs == 0.0) {
            if (lhs != 0.0) res.infinite = true;
            continue;
        }
        const double ratio = lhs / rhs;
        if (ratio > res.constant) res.constant = ratio;
    }
    if (res.support_points == 0) throw std::domain_error("comparison_constant: empty effective support");
    return res;
}

}  // namespace

ComparisonResult comparison_constant(const WeightSymbol& sigma, const DispersionSymbol& a,
                                     const WeightSymbol& tau, const DispersionSymbol& atilde,
                                     const WeightSymbol& chi, const Grid& grid) {
    return comparison_impl(sigma, tau, chi, grid,
                           [&a](const Vec3& xi) { return a.grad1(xi); },
                           [&atilde](const Vec3& xi) { return atilde.grad1(xi); });
}

ComparisonResult radial_comparison_constant(const WeightSymbol& sigma, const DispersionSymbol& a,
                                            const WeightSymbol& tau, const DispersionSymbol& atilde,
                                            const WeightSymbol& chi, const Grid& grid) {
    if (!a.radial || !atilde.radial)
        throw std::invalid_argument("radial_comparison_constant: symbols must be radial");
    return comparison_impl(sigma, tau, chi, grid,
                           [&a](const Vec3& xi) { return a.radial_deriv(norm(xi)); },
                           [&atilde](const Vec3& xi) { return atilde.radial_deriv(norm(xi)); });
}

}  // namespace dd

#include "dd/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace dd::ref {

std::vector<complexd> dft(const WaveField& f) {
    const Grid& g = *f.grid;
    const std::size_t M = g.site_count();
    std::vector<complexd> out(M);
    for (std::size_t k = 0; k < M; ++k) {
        const Vec3 xi = g.mode_wavenumber(k);
        complexd acc(0.0, 0.0);
        for (std::size_t j = 0; j < M; ++j) {
            const Vec3 x = g.site_position(j);
            acc += f.values[j] * std::polar(1.0, -(xi[0] * x[0] + xi[1] * x[1] + xi[2] * x[2]));
        }
        out[k] = acc / static_cast<double>(M);
    }
    return out;
}

WaveField idft(GridPtr grid, const std::vector<complexd>& coeffs) {
    const Grid& g = *grid;
    const std::size_t M = g.site_count();
    if (coeffs.size() != M) throw std::invalid_argument("ref::idft: size mismatch");
    WaveField f = zero_field(std::move(grid));
    for (std::size_t j = 0; j < M; ++j) {
        const Vec3 x = g.site_position(j);
        complexd acc(0.0, 0.0);
        for (std::size_t k = 0; k < M; ++k) {
            const Vec3 xi = g.mode_wavenumber(k);
            acc += coeffs[k] * std::polar(1.0, xi[0] * x[0] + xi[1] * x[1] + xi[2] * x[2]);
        }
        f.values[j] = acc;
    }
    return f;
}

double lp_norm(const WaveField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("ref::lp_norm: p must be >= 1 or infinity");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const auto& v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(f.grid->cell_volume() * s, 1.0 / p);
}

WaveField apply_mode_multiplier(const WaveField& f, const std::function<complexd(const Vec3&)>& multiplier) {
    auto coeffs = dft(f);
    const Grid& g = *f.grid;
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= multiplier(g.mode_wavenumber(k));
    return idft(f.grid, coeffs);
}

WaveField evolve(const WaveField& phi, const TimeProfile& profile, const DispersionSymbol& symbol, double t) {
    const double theta = profile.b(t);
    auto eval = symbol.eval;
    return apply_mode_multiplier(phi, [theta, eval](const Vec3& xi) { return std::polar(1.0, theta * eval(xi)); });
}

double trapezoid(const std::vector<double>& samples, double dt) {
    if (samples.size() < 2) return 0.0;
    double acc = 0.5 * (samples.front() + samples.back());
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) acc += samples[i];
    return acc * dt;
}

}  // namespace dd::ref

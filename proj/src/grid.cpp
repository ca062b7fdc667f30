#include "dd/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "dd/parallel.hpp"

namespace dd {

Grid::Grid(int dims, int points_per_dim, double half_width)
    : dims_(dims),
      points_(points_per_dim),
      half_width_(half_width),
      spacing_(2.0 * half_width / points_per_dim) {
    sites_ = 1;
    for (int d = 0; d < dims_; ++d) sites_ *= static_cast<std::size_t>(points_);
    cell_volume_ = std::pow(spacing_, dims_);
    domain_volume_ = std::pow(2.0 * half_width_, dims_);
    coords_.resize(static_cast<std::size_t>(points_));
    waves_.resize(static_cast<std::size_t>(points_));
    const double k0 = M_PI / half_width_;
    for (int i = 0; i < points_; ++i) {
        coords_[static_cast<std::size_t>(i)] = -half_width_ + (i + 0.5) * spacing_;
        waves_[static_cast<std::size_t>(i)] = k0 * signed_index(i);
    }
}

std::array<int, 3> Grid::unravel(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = dims_ - 1; d >= 0; --d) {
        idx[static_cast<std::size_t>(d)] = static_cast<int>(flat % static_cast<std::size_t>(points_));
        flat /= static_cast<std::size_t>(points_);
    }
    return idx;
}

std::size_t Grid::ravel(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int d = 0; d < dims_; ++d)
        flat = flat * static_cast<std::size_t>(points_) + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
    return flat;
}

Vec3 Grid::site_position(std::size_t flat) const {
    const auto idx = unravel(flat);
    Vec3 x{0.0, 0.0, 0.0};
    for (int d = 0; d < dims_; ++d) x[static_cast<std::size_t>(d)] = coordinate(idx[static_cast<std::size_t>(d)]);
    return x;
}

Vec3 Grid::mode_wavenumber(std::size_t flat) const {
    const auto idx = unravel(flat);
    Vec3 xi{0.0, 0.0, 0.0};
    for (int d = 0; d < dims_; ++d) xi[static_cast<std::size_t>(d)] = wavenumber(idx[static_cast<std::size_t>(d)]);
    return xi;
}

GridPtr make_grid(int dims, int points_per_dim, double half_width) {
    if (dims < 1 || dims > 3) throw std::invalid_argument("grid: dims must be 1, 2 or 3");
    if (points_per_dim < 4 || points_per_dim % 2 != 0)
        throw std::invalid_argument("grid: points per dim must be even and >= 4");
    if (!(half_width > 0.0)) throw std::invalid_argument("grid: half width must be positive");
    return std::make_shared<Grid>(dims, points_per_dim, half_width);
}

WaveField zero_field(GridPtr grid) {
    WaveField f;
    f.values.assign(grid->site_count(), complexd(0.0, 0.0));
    f.grid = std::move(grid);
    return f;
}

WaveField make_field(GridPtr grid, const std::function<complexd(const Vec3&)>& sampler) {
    WaveField f = zero_field(grid);
    const Grid& g = *f.grid;
    par::for_each(g.site_count(), [&](std::size_t j) { f.values[j] = sampler(g.site_position(j)); });
    require_finite(f);
    return f;
}

void require_finite(const WaveField& f) {
    for (const auto& v : f.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("wave field contains non-finite entries");
}

double lp_norm(const WaveField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
    const std::size_t n = f.size();
    if (std::isinf(p)) {
        const double m = par::max(n, [&](std::size_t j) { return std::abs(f.values[j]); });
        if (!std::isfinite(m)) throw std::domain_error("lp_norm: non-finite field");
        return m;
    }
    double s;
    if (p == 2.0) {
        s = par::sum(n, [&](std::size_t j) { return std::norm(f.values[j]); });
    } else {
        s = par::sum(n, [&](std::size_t j) { return std::pow(std::abs(f.values[j]), p); });
    }
    if (!std::isfinite(s)) throw std::domain_error("lp_norm: non-finite field");
    return std::pow(f.grid->cell_volume() * s, 1.0 / p);
}

double boundary_mass_fraction(const WaveField& f) {
    const Grid& g = *f.grid;
    const double edge = 0.9 * g.half_width();
    const double total = par::sum(f.size(), [&](std::size_t j) { return std::norm(f.values[j]); });
    if (total == 0.0) return 0.0;
    const double shell = par::sum(f.size(), [&](std::size_t j) {
        const Vec3 x = g.site_position(j);
        bool outer = false;
        for (int d = 0; d < g.dims(); ++d)
            if (std::abs(x[static_cast<std::size_t>(d)]) > edge) outer = true;
        return outer ? std::norm(f.values[j]) : 0.0;
    });
    return shell / total;
}

std::complex<double> inner_product(const WaveField& a, const WaveField& b) {
    if (a.grid.get() != b.grid.get()) throw std::invalid_argument("inner_product: grid mismatch");
    const double re = par::sum(a.size(), [&](std::size_t j) {
        return a.values[j].real() * b.values[j].real() + a.values[j].imag() * b.values[j].imag();
    });
    const double im = par::sum(a.size(), [&](std::size_t j) {
        return a.values[j].imag() * b.values[j].real() - a.values[j].real() * b.values[j].imag();
    });
    return a.grid->cell_volume() * complexd(re, im);
}

double l2_distance(const WaveField& a, const WaveField& b) {
    if (a.grid.get() != b.grid.get()) throw std::invalid_argument("l2_distance: grid mismatch");
    const double s = par::sum(a.size(), [&](std::size_t j) { return std::norm(a.values[j] - b.values[j]); });
    return std::sqrt(a.grid->cell_volume() * s);
}

WaveField operator+(const WaveField& a, const WaveField& b) {
    if (a.grid.get() != b.grid.get()) throw std::invalid_argument("field sum: grid mismatch");
    WaveField out = a;
    par::for_each(out.size(), [&](std::size_t j) { out.values[j] += b.values[j]; });
    return out;
}

WaveField operator-(const WaveField& a, const WaveField& b) {
    if (a.grid.get() != b.grid.get()) throw std::invalid_argument("field difference: grid mismatch");
    WaveField out = a;
    par::for_each(out.size(), [&](std::size_t j) { out.values[j] -= b.values[j]; });
    return out;
}

WaveField operator*(complexd s, const WaveField& f) {
    WaveField out = f;
    par::for_each(out.size(), [&](std::size_t j) { out.values[j] *= s; });
    return out;
}

void add_scaled(WaveField& dst, complexd s, const WaveField& src) {
    if (dst.grid.get() != src.grid.get()) throw std::invalid_argument("add_scaled: grid mismatch");
    par::for_each(dst.size(), [&](std::size_t j) { dst.values[j] += s * src.values[j]; });
}

}  // namespace dd

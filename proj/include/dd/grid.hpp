#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace dd {

using complexd = std::complex<double>;

// Point in R^n, n <= 3; unused components stay zero so norms over the fixed
// 3 slots are correct for any dimension.
using Vec3 = std::array<double, 3>;

inline double norm_sq(const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }
inline double norm(const Vec3& v) { return std::sqrt(norm_sq(v)); }

/// Periodic cell-centered lattice on [-R, R)^n with DFT wavenumbers.
///
/// Sites are x_j = -R + (j + 1/2) dx per axis, so x = 0 is never a lattice
/// point (singular spatial weights stay finite). Wavenumbers are
/// xi_k = (pi/R) k with k in DFT order {0, 1, ..., N/2-1, -N/2, ..., -1}.
class Grid {
public:
    Grid(int dims, int points_per_dim, double half_width);

    int dims() const { return dims_; }
    int points_per_dim() const { return points_; }
    double half_width() const { return half_width_; }
    double spacing() const { return spacing_; }
    std::size_t site_count() const { return sites_; }
    double cell_volume() const { return cell_volume_; }
    double domain_volume() const { return domain_volume_; }

    double coordinate(int i) const { return coords_[static_cast<std::size_t>(i)]; }
    double wavenumber(int i) const { return waves_[static_cast<std::size_t>(i)]; }
    // Signed DFT index: 0..N/2-1 map to themselves, N/2..N-1 to negatives.
    int signed_index(int i) const { return i < points_ / 2 ? i : i - points_; }

    std::array<int, 3> unravel(std::size_t flat) const;
    std::size_t ravel(const std::array<int, 3>& idx) const;
    Vec3 site_position(std::size_t flat) const;
    Vec3 mode_wavenumber(std::size_t flat) const;

    const std::vector<double>& axis_coordinates() const { return coords_; }
    const std::vector<double>& axis_wavenumbers() const { return waves_; }

private:
    int dims_;
    int points_;
    double half_width_;
    double spacing_;
    std::size_t sites_;
    double cell_volume_;
    double domain_volume_;
    std::vector<double> coords_;
    std::vector<double> waves_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validates (1 <= n <= 3, N even >= 8, R > 0) and builds the lattice.
GridPtr make_grid(int dims, int points_per_dim, double half_width);

/// Complex scalar field sampled on the lattice sites of one shared Grid.
struct WaveField {
    GridPtr grid;
    std::vector<complexd> values;

    std::size_t size() const { return values.size(); }
};

WaveField zero_field(GridPtr grid);
WaveField make_field(GridPtr grid, const std::function<complexd(const Vec3&)>& sampler);

/// Throws if the field contains NaN/Inf entries.
void require_finite(const WaveField& f);

/// (dx^n sum |u_j|^p)^(1/p); max over sites for p = infinity. Requires p >= 1.
double lp_norm(const WaveField& f, double p);

/// Fraction of the squared L2 mass at sites with any |x_i| > 0.9 R.
/// Guards the periodic-torus stand-in for R^n; zero field reports 0.
double boundary_mass_fraction(const WaveField& f);

std::complex<double> inner_product(const WaveField& a, const WaveField& b);  // dx^n sum a conj(b)
double l2_distance(const WaveField& a, const WaveField& b);

WaveField operator+(const WaveField& a, const WaveField& b);
WaveField operator-(const WaveField& a, const WaveField& b);
WaveField operator*(complexd s, const WaveField& f);
void add_scaled(WaveField& dst, complexd s, const WaveField& src);  // dst += s * src

}  // namespace dd

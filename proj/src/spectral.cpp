#include "dd/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "dd/parallel.hpp"

namespace dd {
namespace {

// FFTW planner is not thread-safe; executing a cached plan on fresh arrays is.
// Plans are created FFTW_ESTIMATE (deterministic algorithm choice) and
// FFTW_UNALIGNED so they can run on arbitrary std::vector storage.
class PlanCache {
public:
    static fftw_plan get(const Grid& grid, int sign) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mutex_);
        const Key key{grid.dims(), grid.points_per_dim(), sign};
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;

        int n[3] = {grid.points_per_dim(), grid.points_per_dim(), grid.points_per_dim()};
        std::vector<complexd> a(grid.site_count()), b(grid.site_count());
        fftw_plan plan = fftw_plan_dft(grid.dims(), n,
                                       reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()),
                                       sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw plan creation failed");
        cache.plans_.emplace(key, plan);
        return plan;
    }

private:
    using Key = std::tuple<int, int, int>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

void execute(const Grid& grid, int sign, const complexd* in, complexd* out) {
    fftw_plan plan = PlanCache::get(grid, sign);
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<complexd*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

// Per-axis twiddle e^{+i pi k_s (1 - 1/N)} relating the plain DFT to the
// cell-centered interpolation coefficients: xi_k . x_j expands as
// -pi k_s + 2 pi k_s j / N + pi k_s / N.
std::vector<complexd> axis_twiddle(const Grid& grid) {
    const int N = grid.points_per_dim();
    std::vector<complexd> tw(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        const double phase = M_PI * grid.signed_index(i) * (1.0 - 1.0 / N);
        tw[static_cast<std::size_t>(i)] = std::polar(1.0, phase);
    }
    return tw;
}

}  // namespace

namespace detail {
void fft_forward(const Grid& grid, const complexd* in, complexd* out) { execute(grid, FFTW_FORWARD, in, out); }
void fft_backward(const Grid& grid, const complexd* in, complexd* out) { execute(grid, FFTW_BACKWARD, in, out); }
}  // namespace detail

std::vector<complexd> transform(const WaveField& f) {
    const Grid& g = *f.grid;
    if (f.size() != g.site_count()) throw std::invalid_argument("transform: field/grid size mismatch");
    std::vector<complexd> out(g.site_count());
    detail::fft_forward(g, f.values.data(), out.data());
    const auto tw = axis_twiddle(g);
    const double scale = 1.0 / static_cast<double>(g.site_count());
    par::for_each(out.size(), [&](std::size_t k) {
        const auto idx = g.unravel(k);
        complexd t = tw[static_cast<std::size_t>(idx[0])];
        for (int d = 1; d < g.dims(); ++d) t *= tw[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
        out[k] *= scale * t;
    });
    return out;
}

WaveField inverse_transform(GridPtr grid, const std::vector<complexd>& coeffs) {
    const Grid& g = *grid;
    if (coeffs.size() != g.site_count()) throw std::invalid_argument("inverse_transform: size mismatch");
    const auto tw = axis_twiddle(g);
    std::vector<complexd> staged(coeffs.size());
    par::for_each(coeffs.size(), [&](std::size_t k) {
        const auto idx = g.unravel(k);
        complexd t = tw[static_cast<std::size_t>(idx[0])];
        for (int d = 1; d < g.dims(); ++d) t *= tw[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
        staged[k] = coeffs[k] * std::conj(t);
    });
    WaveField f = zero_field(std::move(grid));
    detail::fft_backward(g, staged.data(), f.values.data());
    return f;
}

double spectral_l2_sq(const Grid& grid, const std::vector<complexd>& coeffs) {
    const double s = par::sum(coeffs.size(), [&](std::size_t k) { return std::norm(coeffs[k]); });
    return grid.domain_volume() * s;
}

WaveField apply_mode_multiplier(const WaveField& f, const std::function<complexd(const Vec3&)>& multiplier) {
    const Grid& g = *f.grid;
    std::vector<complexd> table(g.site_count());
    par::for_each(table.size(), [&](std::size_t k) { table[k] = multiplier(g.mode_wavenumber(k)); });
    return apply_mode_table(f, table);
}

WaveField apply_mode_table(const WaveField& f, const std::vector<complexd>& table) {
    const Grid& g = *f.grid;
    if (f.size() != g.site_count() || table.size() != g.site_count())
        throw std::invalid_argument("apply_mode_table: size mismatch");
    std::vector<complexd> spec(g.site_count());
    detail::fft_forward(g, f.values.data(), spec.data());
    const double scale = 1.0 / static_cast<double>(g.site_count());
    par::for_each(spec.size(), [&](std::size_t k) { spec[k] *= scale * table[k]; });
    WaveField out = zero_field(f.grid);
    detail::fft_backward(g, spec.data(), out.values.data());
    return out;
}

}  // namespace dd

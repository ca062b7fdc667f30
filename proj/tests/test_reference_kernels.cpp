#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "dd/family.hpp"
#include "dd/propagator.hpp"
#include "dd/reference.hpp"
#include "dd/spectral.hpp"

using namespace dd;

namespace {

WaveField random_field(GridPtr grid, std::uint64_t seed) {
    SeededUniform rng(seed);
    WaveField f = zero_field(grid);
    for (auto& v : f.values) v = complexd(rng.next_gaussian(), rng.next_gaussian());
    return f;
}

double field_distance(const WaveField& a, const WaveField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(a.values[i]) + std::norm(b.values[i]);
    }
    return std::sqrt(num / (0.5 * den + 1e-300));
}

}  // namespace

TEST_CASE("FFT path matches the direct DFT reference") {
    for (int dims : {1, 2}) {
        auto grid = make_grid(dims, dims == 1 ? 64 : 16, 8.0);
        const WaveField f = random_field(grid, 5);

        const auto fast = transform(f);
        const auto slow = ref::dft(f);
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < fast.size(); ++k) {
            num += std::norm(fast[k] - slow[k]);
            den += std::norm(slow[k]);
        }
        CHECK(std::sqrt(num / den) < 1e-11);

        CHECK(field_distance(inverse_transform(grid, slow), ref::idft(grid, slow)) < 1e-11);
    }
}

TEST_CASE("multiplier and evolve kernels match the serial reference") {
    auto grid = make_grid(1, 64, 8.0);
    const WaveField f = random_field(grid, 9);
    const auto half_derivative = [](const Vec3& xi) { return complexd(std::sqrt(norm(xi)), 0.0); };
    CHECK(field_distance(apply_mode_multiplier(f, half_derivative),
                         ref::apply_mode_multiplier(f, half_derivative)) < 1e-11);

    const TimeProfile profile = builtin_profile(ProfileKind::signed_power, 2.0);
    const DispersionSymbol symbol = builtin_symbol(SymbolKind::radial_power, 2.0);
    CHECK(field_distance(evolve(f, profile, symbol, 0.8), ref::evolve(f, profile, symbol, 0.8)) < 1e-11);

    CHECK(std::abs(lp_norm(f, 3.0) - ref::lp_norm(f, 3.0)) < 1e-12 * ref::lp_norm(f, 3.0));
}

TEST_CASE("trapezoid reference is exact on affine data") {
    std::vector<double> samples;
    const double dt = 0.125;
    for (int i = 0; i <= 16; ++i) samples.push_back(3.0 + 2.0 * (i * dt));
    const double t_end = 16 * dt;
    CHECK(ref::trapezoid(samples, dt) == doctest::Approx(3.0 * t_end + t_end * t_end).epsilon(1e-14));
}

TEST_CASE("parallel reductions are bit-identical across thread counts") {
    auto grid = make_grid(1, 256, 20.0);
    const WaveField f = random_field(grid, 21);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double one = lp_norm(f, 2.0);
    const double bf1 = boundary_mass_fraction(f);
    omp_set_num_threads(2);
    const double two = lp_norm(f, 2.0);
    const double bf2 = boundary_mass_fraction(f);
    omp_set_num_threads(saved);
    CHECK(one == two);  // exact equality by chunk-ordered reduction
    CHECK(bf1 == bf2);
}

#include <doctest.h>

#include <cmath>

#include "dd/family.hpp"
#include "dd/grid.hpp"
#include "dd/spectral.hpp"

using namespace dd;

namespace {

WaveField random_field(GridPtr grid, std::uint64_t seed) {
    SeededUniform rng(seed);
    WaveField f = zero_field(grid);
    for (auto& v : f.values) v = complexd(rng.next_gaussian(), rng.next_gaussian());
    return f;
}

}  // namespace

TEST_CASE("make_grid wavenumber ordering and cell-centered lattice") {
    auto tiny = make_grid(1, 4, M_PI);
    CHECK(tiny->wavenumber(0) == doctest::Approx(0.0));
    CHECK(tiny->wavenumber(1) == doctest::Approx(1.0));
    CHECK(tiny->wavenumber(2) == doctest::Approx(-2.0));
    CHECK(tiny->wavenumber(3) == doctest::Approx(-1.0));

    auto g8 = make_grid(1, 8, M_PI);
    CHECK(g8->spacing() == doctest::Approx(M_PI / 4.0));
    CHECK(g8->coordinate(0) == doctest::Approx(-M_PI + M_PI / 8.0));

    auto g2 = make_grid(2, 256, 20.0);
    CHECK(g2->site_count() == 65536);
    CHECK(std::abs(g2->wavenumber(128)) == doctest::Approx(128.0 * M_PI / 20.0));

    // No lattice site at the origin.
    auto g = make_grid(1, 128, 10.0);
    for (int i = 0; i < 128; ++i) CHECK(std::abs(g->coordinate(i)) > 1e-12);
}

TEST_CASE("make_grid rejects bad parameters") {
    CHECK_THROWS_AS(make_grid(0, 64, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 64, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 65, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 64, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 64, -2.0), std::invalid_argument);
}

TEST_CASE("transform round trip, Parseval and linearity") {
    for (int dims : {1, 2}) {
        auto grid = make_grid(dims, dims == 1 ? 128 : 32, 10.0);
        const WaveField f = random_field(grid, 11 + static_cast<std::uint64_t>(dims));
        const WaveField g = random_field(grid, 12 + static_cast<std::uint64_t>(dims));

        const auto cf = transform(f);
        const WaveField back = inverse_transform(grid, cf);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            num += std::norm(back.values[i] - f.values[i]);
            den += std::norm(f.values[i]);
        }
        CHECK(std::sqrt(num / den) < 1e-13);

        const double space = lp_norm(f, 2.0);
        const double spectral = std::sqrt(spectral_l2_sq(*grid, cf));
        CHECK(std::abs(space - spectral) / space < 1e-12);

        const complexd alpha(0.7, -0.3);
        const auto cg = transform(g);
        const auto sum = transform(alpha * f + g);
        double lin = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < sum.size(); ++k) {
            lin += std::norm(sum[k] - (alpha * cf[k] + cg[k]));
            scale += std::norm(sum[k]);
        }
        CHECK(std::sqrt(lin) < 1e-13 * std::sqrt(scale) + 1e-15);
    }
}

TEST_CASE("plane wave maps to a single unit coefficient") {
    auto grid = make_grid(1, 64, M_PI);
    const int mode = 5;
    const double xi = grid->wavenumber(mode);
    const WaveField wave = make_field(grid, [xi](const Vec3& x) { return std::polar(1.0, xi * x[0]); });
    const auto c = transform(wave);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k == static_cast<std::size_t>(mode)) {
            CHECK(std::abs(c[k] - complexd(1.0, 0.0)) < 1e-13);
        } else {
            CHECK(std::abs(c[k]) < 1e-13);
        }
    }

    const auto zero = transform(zero_field(grid));
    for (const auto& v : zero) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("Gaussian spectrum decays below 1e-12 before Nyquist") {
    auto grid = make_grid(1, 256, 20.0);
    const WaveField f = make_field(grid, [](const Vec3& x) { return complexd(std::exp(-x[0] * x[0]), 0.0); });
    const auto c = transform(f);
    // Inspect a band strictly inside the Nyquist index.
    double peak = 0.0;
    for (const auto& v : c) peak = std::max(peak, std::abs(v));
    const int N = grid->points_per_dim();
    for (int k = N / 2 - 8; k <= N / 2 + 8; ++k) {
        const int idx = (k + N) % N;
        CHECK(std::abs(c[static_cast<std::size_t>(idx)]) < 1e-12 * peak);
    }
}

TEST_CASE("lp_norm closed forms and properties") {
    auto gpi = make_grid(1, 64, M_PI);
    const WaveField ones = make_field(gpi, [](const Vec3&) { return complexd(1.0, 0.0); });
    CHECK(lp_norm(ones, 2.0) == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-12));

    WaveField spike = zero_field(gpi);
    spike.values[10] = complexd(0.0, 3.0);
    CHECK(lp_norm(spike, std::numeric_limits<double>::infinity()) == doctest::Approx(3.0));

    auto g = make_grid(1, 256, 20.0);
    const WaveField gauss = make_field(g, [](const Vec3& x) { return complexd(std::exp(-x[0] * x[0]), 0.0); });
    CHECK(std::abs(lp_norm(gauss, 2.0) - std::pow(M_PI / 2.0, 0.25)) < 1e-10);

    CHECK_THROWS_AS(lp_norm(gauss, 0.5), std::invalid_argument);

    // Homogeneity and triangle inequality on random pairs.
    for (std::uint64_t s = 0; s < 10; ++s) {
        const WaveField a = random_field(g, 100 + s);
        const WaveField b = random_field(g, 200 + s);
        for (double p : {1.0, 2.0, 3.5, std::numeric_limits<double>::infinity()}) {
            CHECK(lp_norm(complexd(-2.5, 0.0) * a, p) == doctest::Approx(2.5 * lp_norm(a, p)).epsilon(1e-12));
            CHECK(lp_norm(a + b, p) <= lp_norm(a, p) + lp_norm(b, p) + 1e-12);
        }
    }
}

TEST_CASE("boundary mass fraction") {
    auto g = make_grid(1, 256, 20.0);
    const WaveField narrow = make_field(g, [](const Vec3& x) { return complexd(std::exp(-x[0] * x[0]), 0.0); });
    CHECK(boundary_mass_fraction(narrow) < 1e-10);

    // Constant field: the fraction equals the shell site count over N.
    const WaveField flat = make_field(g, [](const Vec3&) { return complexd(1.0, 0.0); });
    int shell = 0;
    for (int i = 0; i < g->points_per_dim(); ++i)
        if (std::abs(g->coordinate(i)) > 0.9 * g->half_width()) ++shell;
    CHECK(boundary_mass_fraction(flat) ==
          doctest::Approx(static_cast<double>(shell) / g->points_per_dim()).epsilon(1e-12));

    const double c = 0.95 * g->half_width();
    const WaveField shifted =
        make_field(g, [c](const Vec3& x) { return complexd(std::exp(-(x[0] - c) * (x[0] - c)), 0.0); });
    CHECK(boundary_mass_fraction(shifted) > 0.5);

    CHECK(boundary_mass_fraction(zero_field(g)) == 0.0);
}

TEST_CASE("field invariants") {
    auto g = make_grid(1, 64, 5.0);
    WaveField f = zero_field(g);
    f.values[3] = complexd(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(require_finite(f), std::domain_error);
    CHECK_THROWS_AS(lp_norm(f, 2.0), std::domain_error);
}

TEST_CASE("three-dimensional transform round trip and plane-wave indexing") {
    auto grid = make_grid(3, 8, 5.0);
    const WaveField f = random_field(grid, 77);
    const auto c = transform(f);
    const WaveField back = inverse_transform(grid, c);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        num += std::norm(back.values[i] - f.values[i]);
        den += std::norm(f.values[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-13);
    CHECK(std::abs(lp_norm(f, 2.0) - std::sqrt(spectral_l2_sq(*grid, c))) < 1e-12 * lp_norm(f, 2.0));

    // A plane wave lands on exactly the raveled mode index.
    const std::array<int, 3> idx{3, 5, 1};
    const Vec3 xi{grid->wavenumber(3), grid->wavenumber(5), grid->wavenumber(1)};
    const WaveField wave = make_field(grid, [xi](const Vec3& x) {
        return std::polar(1.0, xi[0] * x[0] + xi[1] * x[1] + xi[2] * x[2]);
    });
    const auto cw = transform(wave);
    const std::size_t flat = grid->ravel(idx);
    CHECK(std::abs(cw[flat] - complexd(1.0, 0.0)) < 1e-12);
    double off = 0.0;
    for (std::size_t k = 0; k < cw.size(); ++k)
        if (k != flat) off = std::max(off, std::abs(cw[k]));
    CHECK(off < 1e-12);
}

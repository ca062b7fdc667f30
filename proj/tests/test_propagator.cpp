#include <doctest.h>

#include <cmath>

#include "dd/family.hpp"
#include "dd/propagator.hpp"
#include "dd/spectral.hpp"

using namespace dd;

namespace {

WaveField random_field(GridPtr grid, std::uint64_t seed) {
    SeededUniform rng(seed);
    WaveField f = zero_field(grid);
    for (auto& v : f.values) v = complexd(rng.next_gaussian(), rng.next_gaussian());
    return f;
}

double rel_distance(const WaveField& a, const WaveField& b) {
    return l2_distance(a, b) / (lp_norm(a, 2.0) + 1e-300);
}

}  // namespace

TEST_CASE("evolution at t = 0 is the identity") {
    auto grid = make_grid(1, 128, 10.0);
    const WaveField f = random_field(grid, 2);
    for (auto kind : {ProfileKind::power, ProfileKind::sine, ProfileKind::exp_profile}) {
        const WaveField out = evolve(f, builtin_profile(kind, 1.0), builtin_symbol(SymbolKind::laplacian, 2.0), 0.0);
        CHECK(rel_distance(out, f) < 1e-13);
    }
}

TEST_CASE("plane waves are eigenfunctions of the propagator") {
    auto grid = make_grid(1, 64, M_PI);
    const double xi = grid->wavenumber(3);
    const WaveField wave = make_field(grid, [xi](const Vec3& x) { return std::polar(1.0, xi * x[0]); });
    const auto profile = builtin_profile(ProfileKind::power, 1.0);
    const auto symbol = builtin_symbol(SymbolKind::radial_power, 2.0);
    const double t = 0.6;
    const WaveField out = evolve(wave, profile, symbol, t);
    const complexd phase = std::polar(1.0, profile.b(t) * symbol.eval({xi, 0.0, 0.0}));
    double worst = 0.0;
    for (std::size_t i = 0; i < wave.size(); ++i)
        worst = std::max(worst, std::abs(out.values[i] - phase * wave.values[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("unitarity across builtin profiles and symbols") {
    auto grid = make_grid(1, 64, 10.0);
    SeededUniform rng(6);
    for (auto pk : {ProfileKind::power, ProfileKind::signed_power, ProfileKind::exp_profile, ProfileKind::sine,
                    ProfileKind::cos_minus_one, ProfileKind::sincos, ProfileKind::identity}) {
        const auto profile = builtin_profile(pk, 1.0);
        for (auto sk : {SymbolKind::radial_power, SymbolKind::saddle, SymbolKind::laplacian}) {
            const auto symbol = builtin_symbol(sk, 2.0);
            const WaveField f = random_field(grid, 50 + static_cast<std::uint64_t>(pk) * 7 +
                                                        static_cast<std::uint64_t>(sk));
            const double base = lp_norm(f, 2.0);
            for (int i = 0; i < 5; ++i) {
                const double t = rng.next();  // inside every builtin domain
                const double ratio = lp_norm(evolve(f, profile, symbol, t), 2.0) / base;
                CHECK(std::abs(ratio - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("degenerate flow equals the unit-speed flow at the mapped time") {
    auto grid = make_grid(1, 128, 10.0);
    const WaveField f = random_field(grid, 7);
    const auto b = builtin_profile(ProfileKind::power, 1.0);
    const auto unit = builtin_profile(ProfileKind::identity);
    const auto symbol = builtin_symbol(SymbolKind::laplacian, 2.0);
    for (double t : {0.3, 0.9, 1.7}) {
        const WaveField deg = evolve(f, b, symbol, t);
        const WaveField ref = evolve(f, unit, symbol, b.b(t));
        // Same multiplier value, same rounding path.
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(deg.values[i] == ref.values[i]);
    }
}

TEST_CASE("group law and adjoint identity") {
    auto grid = make_grid(1, 128, 10.0);
    const WaveField f = random_field(grid, 8);
    const WaveField g = random_field(grid, 9);
    const auto profile = builtin_profile(ProfileKind::exp_profile);
    const auto symbol = builtin_symbol(SymbolKind::radial_power, 2.0);

    const double s = 0.4, t = 1.1;
    CHECK(rel_distance(evolve_between(f, profile, symbol, s, s), f) < 1e-13);

    const WaveField two_hop = evolve_between(evolve_between(f, profile, symbol, 0.0, s), profile, symbol, s, t);
    const WaveField one_hop = evolve_between(f, profile, symbol, 0.0, t);
    CHECK(rel_distance(two_hop, one_hop) < 1e-12);

    const complexd lhs = inner_product(evolve_between(f, profile, symbol, 0.0, t), g);
    const complexd rhs = inner_product(f, evolve_between(g, profile, symbol, t, 0.0));
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
}

TEST_CASE("retarded integral: zero forcing and empty range") {
    auto grid = make_grid(1, 64, 10.0);
    const auto profile = builtin_profile(ProfileKind::power, 1.0);
    Propagator flow(grid, builtin_symbol(SymbolKind::laplacian, 2.0), profile);
    Trajectory zeros = flow.trajectory(zero_field(grid), 0.0, 1.0, 16);
    CHECK(lp_norm(duhamel(zeros, profile, 8), 2.0) == 0.0);

    Trajectory some = flow.trajectory(random_field(grid, 12), 0.0, 1.0, 16);
    CHECK(lp_norm(duhamel(some, profile, 0), 2.0) == 0.0);
}

TEST_CASE("retarded integral closed form and quadrature order") {
    // With g(s) = e^{i b(s) Delta} psi the phases cancel and the integral is
    // b(t_j) e^{i b(t_j) Delta} psi exactly.
    auto grid = make_grid(1, 128, 10.0);
    const auto profile = builtin_profile(ProfileKind::exp_profile);
    const auto lap = builtin_symbol(SymbolKind::laplacian, 2.0);
    const WaveField psi = make_field(grid, [](const Vec3& x) { return complexd(std::exp(-x[0] * x[0]), 0.0); });
    Propagator flow(grid, lap, profile);

    auto error_at = [&](std::size_t steps) {
        const Trajectory g = flow.trajectory(psi, 0.0, 1.0, steps);
        const std::size_t j = steps;  // endpoint target
        const WaveField got = duhamel(g, profile, lap, j);
        const WaveField expect = complexd(profile.b(1.0), 0.0) * flow.at(psi, 1.0);
        return l2_distance(got, expect);
    };
    const double coarse = error_at(64);
    const double fine = error_at(128);
    CHECK(coarse / fine >= 3.5);  // second-order trapezoid
}

TEST_CASE("prefix-summed retarded integrals match the direct quadrature") {
    auto grid = make_grid(1, 64, 10.0);
    const auto profile = builtin_profile(ProfileKind::power, 1.0);
    const auto lap = builtin_symbol(SymbolKind::laplacian, 2.0);
    Propagator flow(grid, lap, profile);
    const Trajectory g = flow.trajectory(random_field(grid, 13), 0.0, 1.0, 32);
    const auto all = duhamel_all(g, profile, lap);
    REQUIRE(all.size() == 33);
    for (std::size_t j = 0; j <= 32; j += 4) {
        const WaveField direct = duhamel(g, profile, lap, j);
        CHECK(l2_distance(all[j], direct) < 1e-12 * (lp_norm(direct, 2.0) + 1.0));
    }
}

TEST_CASE("invariant-estimate weight field") {
    auto grid = make_grid(1, 128, 10.0);
    const WaveField f = random_field(grid, 14);
    const auto lap = builtin_symbol(SymbolKind::laplacian, 2.0);

    // |grad(-|xi|^2)|^{1/2} = sqrt(2 |xi|).
    const WaveField via_op = universal_weight_field(f, lap, 0.0);
    const WaveField manual = apply_mode_multiplier(f, [](const Vec3& xi) {
        return complexd(std::sqrt(2.0 * norm(xi)), 0.0);
    });
    CHECK(rel_distance(via_op, manual) < 1e-12);

    // In dimension one the weight of the order-m radial symbol is sqrt(m) |xi|^{(m-1)/2}.
    const double m = 3.0;
    const auto rp = builtin_symbol(SymbolKind::radial_power, m);
    const WaveField via_rp = universal_weight_field(f, rp, 0.0);
    const WaveField manual_rp = apply_mode_multiplier(f, [m](const Vec3& xi) {
        const double r = norm(xi);
        return complexd(r == 0.0 ? 0.0 : std::sqrt(m) * std::pow(r, (m - 1.0) / 2.0), 0.0);
    });
    CHECK(rel_distance(via_rp, manual_rp) < 1e-12);

    // s = 0 leaves the spatial part unweighted; s > 0 damps the far field.
    const WaveField weighted = universal_weight_field(f, lap, 1.0);
    CHECK(lp_norm(weighted, 2.0) < lp_norm(via_op, 2.0));
}

TEST_CASE("trajectory time grid is uniform") {
    auto grid = make_grid(1, 64, 10.0);
    Propagator flow(grid, builtin_symbol(SymbolKind::laplacian, 2.0), builtin_profile(ProfileKind::identity));
    const Trajectory traj = flow.trajectory(random_field(grid, 15), -1.0, 1.0, 10);
    REQUIRE(traj.fields.size() == 11);
    for (std::size_t j = 0; j + 1 <= traj.steps(); ++j)
        CHECK(std::abs((traj.time_at(j + 1) - traj.time_at(j)) - traj.dt()) < 1e-14);
}

TEST_CASE("non-finite profile values are rejected") {
    auto grid = make_grid(1, 64, 10.0);
    const WaveField f = random_field(grid, 99);
    // Fractional power profiles are undefined at negative times.
    const auto p = builtin_profile(ProfileKind::power, 0.5);
    CHECK_THROWS_AS(evolve(f, p, builtin_symbol(SymbolKind::laplacian, 2.0), -1.0), std::domain_error);
}

#include <doctest.h>

#include <cmath>

#include "dd/semilinear.hpp"
#include "dd/spectral.hpp"
#include "oracle_helpers.hpp"

using namespace dd;

namespace {

WaveField scaled_gaussian(GridPtr grid, double target_norm) {
    WaveField u0 = make_field(grid, [](const Vec3& x) { return complexd(std::exp(-norm_sq(x)), 0.0); });
    return complexd(target_norm / lp_norm(u0, 2.0), 0.0) * u0;
}

}  // namespace

TEST_CASE("problem construction enforces the exponent range") {
    auto grid = make_grid(1, 64, 20.0);
    const WaveField u0 = scaled_gaussian(grid, 0.1);
    const auto b = builtin_profile(ProfileKind::power, 1.0);

    CHECK_NOTHROW(make_semilinear_problem(grid, 3.0, complexd(1.0, 0.0), b, u0, 0.5, 64));
    // 4/n + 1 = 5 at n = 1: the endpoint is excluded.
    CHECK_THROWS_AS(make_semilinear_problem(grid, 5.0, complexd(1.0, 0.0), b, u0, 0.5, 64), std::domain_error);
    CHECK_THROWS_AS(make_semilinear_problem(grid, 1.0, complexd(1.0, 0.0), b, u0, 0.5, 64), std::domain_error);
    CHECK_THROWS_AS(make_semilinear_problem(grid, 5.5, complexd(1.0, 0.0), b, u0, 0.5, 64), std::domain_error);

    auto grid2 = make_grid(2, 32, 10.0);
    const WaveField v0 = scaled_gaussian(grid2, 0.1);
    CHECK_THROWS_AS(make_semilinear_problem(grid2, 3.0, complexd(1.0, 0.0), b, v0, 0.5, 64), std::domain_error);
    CHECK_NOTHROW(make_semilinear_problem(grid2, 2.5, complexd(1.0, 0.0), b, v0, 0.5, 64));

    // The derived pair (q, p+1) satisfies the admissibility identity.
    for (double p : {1.5, 2.0, 3.0, 4.5}) {
        const auto problem = make_semilinear_problem(grid, p, complexd(1.0, 0.0), b, u0, 0.5, 64);
        const double q = problem.strichartz_q();
        CHECK(std::abs(2.0 / q + 1.0 / (p + 1.0) - 0.5) < 1e-12);
    }
}

TEST_CASE("zero coupling reproduces the linear flow after one iteration") {
    auto grid = make_grid(1, 128, 20.0);
    const auto problem = make_semilinear_problem(grid, 3.0, complexd(0.0, 0.0),
                                                 builtin_profile(ProfileKind::power, 1.0),
                                                 scaled_gaussian(grid, 0.5), 0.5, 64);
    const auto [traj, diag] = picard_solve(problem, 1e-12, 8);
    CHECK(diag.iterations == 1);
    CHECK(diag.final_residual < 1e-12);

    Propagator flow(grid, builtin_symbol(SymbolKind::laplacian, 2.0), problem.profile);
    const Trajectory expect = flow.trajectory(problem.initial_data, 0.0, 0.5, 64);
    for (std::size_t j = 0; j <= 64; ++j) CHECK(l2_distance(traj.fields[j], expect.fields[j]) < 1e-13);
}

TEST_CASE("zero data stays zero") {
    auto grid = make_grid(1, 64, 20.0);
    const auto problem = make_semilinear_problem(grid, 3.0, complexd(1.0, 0.0),
                                                 builtin_profile(ProfileKind::power, 1.0), zero_field(grid), 0.5,
                                                 32);
    const auto [traj, diag] = picard_solve(problem, 1e-12, 8);
    (void)diag;
    for (const auto& f : traj.fields) CHECK(lp_norm(f, 2.0) == 0.0);
}

TEST_CASE("cubic solve matches the substituted split-step solution") {
    auto grid = make_grid(1, 128, 20.0);
    const auto b = builtin_profile(ProfileKind::power, 1.0);
    const complexd mu(1.0, 0.0);

    auto run = [&](std::size_t J) {
        const auto problem = make_semilinear_problem(grid, 3.0, mu, b, scaled_gaussian(grid, 0.1), 0.5, J);
        const auto [traj, diag] = picard_solve(problem, 1e-12, 32);
        CHECK(diag.contraction_factors.back() < 1.0);
        CHECK(diag.final_residual < 1e-10);
        std::vector<double> tau(J + 1);
        for (std::size_t j = 0; j <= J; ++j) tau[j] = b.b(traj.time_at(j));
        const auto oracle_traj = oracle::split_step_cubic(problem.initial_data, mu, tau);
        double sup = 0.0;
        for (std::size_t j = 0; j <= J; ++j) sup = std::max(sup, l2_distance(traj.fields[j], oracle_traj[j]));
        return sup;
    };
    const double coarse = run(64);
    const double fine = run(128);
    CHECK(coarse < 1e-6);
    CHECK(coarse / fine >= 3.5);
}

TEST_CASE("truncated iteration has a strictly larger defect") {
    auto grid = make_grid(1, 128, 20.0);
    const auto problem = make_semilinear_problem(grid, 3.0, complexd(1.0, 0.0),
                                                 builtin_profile(ProfileKind::power, 1.0),
                                                 scaled_gaussian(grid, 0.4), 0.5, 96);
    // A huge tolerance stops after the first application of the map.
    const auto [one_step, diag_one] = picard_solve(problem, 1e9, 1);
    (void)diag_one;
    const auto [converged, diag_conv] = picard_solve(problem, 1e-12, 32);
    CHECK(residual(one_step, problem) > 10.0 * diag_conv.final_residual);
    CHECK(diag_conv.final_residual <= 10.0 * 1e-12);
}

TEST_CASE("horizon too large raises the contraction error") {
    auto grid = make_grid(1, 128, 20.0);
    // Data and horizon chosen outside the contraction regime but mild enough
    // for several finite iterations.
    const auto problem = make_semilinear_problem(grid, 3.0, complexd(1.0, 0.0),
                                                 builtin_profile(ProfileKind::identity),
                                                 scaled_gaussian(grid, 1.5), 2.0, 64);
    CHECK_THROWS_WITH_AS(([&] { (void)picard_solve(problem, 1e-12, 40); })(),
                         doctest::Contains("horizon too large"), std::runtime_error);
}

TEST_CASE("local horizon estimate") {
    const auto b = builtin_profile(ProfileKind::power, 1.0);
    // Small data saturates the search grid.
    CHECK(local_time_estimate(1e-9, 1, 1.0, 3.0, b, 2.0, 4.0) == doctest::Approx(4.0));
    // Stronger coupling never lengthens the horizon.
    const double t1 = local_time_estimate(0.5, 1, 1.0, 3.0, b, 2.0);
    const double t2 = local_time_estimate(0.5, 1, 2.0, 3.0, b, 2.0);
    CHECK(t2 <= t1);
    // Exponent positivity: n = 1, p = 3 gives 1 - n(p-1)/4 = 1/2.
    CHECK_NOTHROW(local_time_estimate(0.1, 1, 1.0, 3.0, b, 2.0));
    CHECK_THROWS_AS(local_time_estimate(0.1, 1, 1.0, 5.0, b, 2.0), std::domain_error);
}

TEST_CASE("contraction factor agrees with the horizon formula to a factor 3") {
    auto grid = make_grid(1, 128, 20.0);
    const auto b = builtin_profile(ProfileKind::power, 1.0);
    const double data_norm = 0.4, T = 0.5;
    const auto problem = make_semilinear_problem(grid, 3.0, complexd(1.0, 0.0), b,
                                                 scaled_gaussian(grid, data_norm), T, 96);
    const auto [traj, diag] = picard_solve(problem, 1e-12, 32);
    (void)traj;

    // 2 C(T) |mu| R^{p-1} with C(T) = T^{1/2} sup |b'|^{4/3} and R ~ 2 ||u0||.
    const double q = problem.strichartz_q(), qc = q / (q - 1.0);
    const double weight_exponent = q / (3.0 * qc) - 1.0;
    const double cT = std::sqrt(T) * std::pow(T, weight_exponent);  // sup of |t|^we on [0, T]
    const double margin = 2.0 * cT * std::pow(2.0 * data_norm, 2.0);
    const double factor = diag.contraction_factors.back();
    CHECK(factor <= 3.0 * margin);
}

TEST_CASE("data continuity: unitary case and perturbation ratios") {
    auto grid = make_grid(1, 128, 20.0);
    const auto b = builtin_profile(ProfileKind::power, 1.0);
    const WaveField v0 = make_field(grid, [](const Vec3& x) {
        return std::polar(0.08 * std::exp(-(x[0] - 1.0) * (x[0] - 1.0)), 2.0 * x[0]);
    });

    {
        const auto linear = make_semilinear_problem(grid, 3.0, complexd(0.0, 0.0), b,
                                                    scaled_gaussian(grid, 0.1), 0.5, 64);
        const auto rows = data_continuity_experiment(linear, v0, {1e-2, 1e-3});
        for (const auto& r : rows) CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-10));
    }
    {
        const auto problem = make_semilinear_problem(grid, 3.0, complexd(1.0, 0.0), b,
                                                     scaled_gaussian(grid, 0.1), 0.5, 96);
        const auto rows = data_continuity_experiment(problem, v0, {1e-2, 1e-3, 1e-4});
        REQUIRE(rows.size() == 3);
        for (const auto& r : rows) {
            CHECK(r.ratio > 0.5 * rows[0].ratio);
            CHECK(r.ratio < 2.0 * rows[0].ratio);
        }
        CHECK_THROWS_AS(data_continuity_experiment(problem, v0, {0.0}), std::invalid_argument);
    }
}

TEST_CASE("pointwise nonlinearity") {
    auto grid = make_grid(1, 64, 10.0);
    WaveField f = zero_field(grid);
    f.values[3] = complexd(0.0, 2.0);
    const WaveField cubed = nonlinearity(f, 3.0);
    CHECK(cubed.values[3] == complexd(0.0, 8.0));  // |z|^2 z
    CHECK(cubed.values[10] == complexd(0.0, 0.0));

    // Non-integer exponent acts pointwise as well.
    f.values[3] = complexd(4.0, 0.0);
    const WaveField frac = nonlinearity(f, 1.5);
    CHECK(frac.values[3].real() == doctest::Approx(8.0));  // |4|^{0.5} * 4
}

TEST_CASE("two-thirds dealiasing") {
    auto grid = make_grid(1, 96, 10.0);
    // Field with content at a mode beyond the 2/3 cut.
    const int hot = 40;  // signed index 40 > 96/3
    WaveField f = zero_field(grid);
    {
        auto coeffs = std::vector<complexd>(grid->site_count(), complexd(0.0, 0.0));
        coeffs[5] = complexd(1.0, 0.0);
        coeffs[static_cast<std::size_t>(hot)] = complexd(1.0, 0.0);
        f = inverse_transform(grid, coeffs);
    }
    const WaveField filtered = dealias_two_thirds(f);
    const auto spec = transform(filtered);
    CHECK(std::abs(spec[5] - complexd(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(spec[static_cast<std::size_t>(hot)]) < 1e-13);

    // The toggle leaves a smooth small-data solve essentially unchanged and
    // convergent.
    const auto b = builtin_profile(ProfileKind::power, 1.0);
    WaveField u0 = make_field(grid, [](const Vec3& x) { return complexd(std::exp(-norm_sq(x)), 0.0); });
    u0 = complexd(0.1 / lp_norm(u0, 2.0), 0.0) * u0;
    const auto plain = make_semilinear_problem(grid, 3.0, complexd(1.0, 0.0), b, u0, 0.5, 64, false);
    const auto filtered_problem = make_semilinear_problem(grid, 3.0, complexd(1.0, 0.0), b, u0, 0.5, 64, true);
    const auto [traj_a, diag_a] = picard_solve(plain, 1e-12, 32);
    const auto [traj_b, diag_b] = picard_solve(filtered_problem, 1e-12, 32);
    CHECK(diag_b.final_residual < 1e-10);
    (void)diag_a;
    double sup = 0.0;
    for (std::size_t j = 0; j < traj_a.fields.size(); ++j)
        sup = std::max(sup, l2_distance(traj_a.fields[j], traj_b.fields[j]));
    CHECK(sup < 1e-8);  // aliasing is negligible for resolved data
}

#include <doctest.h>

#include <cmath>

#include "dd/family.hpp"
#include "dd/profiles.hpp"

using namespace dd;

TEST_CASE("builtin profile values") {
    const auto p1 = builtin_profile(ProfileKind::power, 1.0);
    CHECK(p1.b(2.0) == doctest::Approx(2.0));
    CHECK(p1.bprime(2.0) == doctest::Approx(2.0));

    const auto ex = builtin_profile(ProfileKind::exp_profile);
    CHECK(std::abs(ex.b(0.0)) <= 1e-14);
    CHECK(ex.bprime(0.0) == doctest::Approx(0.0));  // degenerate at t = 0

    const auto sn = builtin_profile(ProfileKind::sine);
    CHECK(sn.bprime(0.7) == doctest::Approx(std::cos(0.7)));

    for (auto kind : {ProfileKind::power, ProfileKind::signed_power, ProfileKind::exp_profile, ProfileKind::sine,
                      ProfileKind::cos_minus_one, ProfileKind::sincos, ProfileKind::identity}) {
        const auto p = builtin_profile(kind, 1.0);
        CHECK(std::abs(p.b(0.0)) <= 1e-14);
    }
    CHECK_THROWS_AS(builtin_profile(ProfileKind::power, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(profile_kind_from_string("cubic"), std::invalid_argument);
}

TEST_CASE("bprime matches a centered difference of b") {
    SeededUniform rng(4);
    for (auto kind : {ProfileKind::signed_power, ProfileKind::sine, ProfileKind::cos_minus_one, ProfileKind::sincos,
                      ProfileKind::identity}) {
        const auto p = builtin_profile(kind, 2.0);
        for (int i = 0; i < 50; ++i) {
            const double t = 6.0 * rng.next() - 3.0;
            const double h = 1e-6 * std::max(1.0, std::abs(t));
            const double fd = (p.b(t + h) - p.b(t - h)) / (2.0 * h);
            CHECK(std::abs(fd - p.bprime(t)) <= 1e-7 * std::max(1.0, std::abs(p.bprime(t))));
        }
    }
}

TEST_CASE("classification of the trigonometric profile") {
    const auto sn = builtin_profile(ProfileKind::sine);
    const ProfileClass cls = classify(sn, 0.0, 2.0 * M_PI);
    REQUIRE(cls.kind == ProfileClass::Kind::FiniteCritical);
    REQUIRE(cls.k() == 2);
    CHECK(std::abs(cls.critical_points[0] - M_PI_2) < 1e-9);
    CHECK(std::abs(cls.critical_points[1] - 3.0 * M_PI_2) < 1e-9);

    for (int K = 1; K <= 8; ++K) {
        const ProfileClass c = classify(sn, 0.0, K * M_PI);
        CHECK(c.kind == ProfileClass::Kind::FiniteCritical);
        CHECK(c.k() == K);
    }
}

TEST_CASE("monotone classification survives touching zeros of b'") {
    const auto cubic = builtin_profile(ProfileKind::signed_power, 2.0);  // b = t^3/3, b' = t^2
    const ProfileClass cls = classify(cubic, -4.0, 4.0);
    CHECK(cls.kind == ProfileClass::Kind::StrictlyMonotone);
    CHECK(cls.direction == 1);
    CHECK(cls.satisfies_H);

    const auto p1 = builtin_profile(ProfileKind::power, 1.0);
    const ProfileClass one_sided = classify(p1, 0.0, 4.0);
    CHECK(one_sided.kind == ProfileClass::Kind::StrictlyMonotone);
    CHECK(one_sided.satisfies_H);  // [0, infinity) sense

    // sine is monotone on a short window but bounded, so (H) fails.
    const ProfileClass sine_window = classify(builtin_profile(ProfileKind::sine), -1.0, 1.0);
    CHECK(sine_window.kind == ProfileClass::Kind::StrictlyMonotone);
    CHECK(!sine_window.satisfies_H);
}

TEST_CASE("plateau detection") {
    TimeProfile flat;
    flat.label = "flat";
    flat.b = [](double) { return 0.0; };
    flat.bprime = [](double) { return 0.0; };
    CHECK_THROWS_AS(classify(flat, 0.0, 1.0), std::domain_error);
}

TEST_CASE("inversion of monotone profiles") {
    CHECK(invert(builtin_profile(ProfileKind::power, 1.0), 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(invert(builtin_profile(ProfileKind::identity), 7.0) == doctest::Approx(7.0));

    // Bisection oracle for the exponential profile at s = 1.
    const auto ex = builtin_profile(ProfileKind::exp_profile);
    double lo = 0.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ex.b(mid) < 1.0 ? lo : hi) = mid;
    }
    CHECK(std::abs(invert(ex, 1.0) - 0.5 * (lo + hi)) < 1e-10);

    // invert then b is the identity on random in-range points.
    SeededUniform rng(8);
    for (auto kind : {ProfileKind::power, ProfileKind::signed_power, ProfileKind::exp_profile, ProfileKind::identity}) {
        for (double alpha : {0.0, 1.0, 2.0}) {
            const auto p = builtin_profile(kind, alpha);
            for (int i = 0; i < 100; ++i) {
                double t = 3.0 * rng.next();
                if (kind == ProfileKind::signed_power) t = 3.0 * (2.0 * rng.next() - 1.0);
                const double s = p.b(t);
                CHECK(std::abs(p.b(invert(p, s)) - s) <= 1e-10 * (1.0 + std::abs(s)));
            }
        }
    }

    CHECK_THROWS_AS(invert(builtin_profile(ProfileKind::exp_profile), -0.5), std::domain_error);
}

TEST_CASE("lemma constants") {
    ProfileClass finite;
    finite.kind = ProfileClass::Kind::FiniteCritical;
    finite.critical_points = {0.5, 1.5};
    CHECK(lemma_constant(finite, 2.0).value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

    ProfileClass monotone;
    monotone.kind = ProfileClass::Kind::StrictlyMonotone;
    const auto trivial = lemma_constant(monotone, 2.0);
    CHECK(trivial.value == 1.0);
    CHECK(trivial.trivial);

    SummableWeight w;
    w.c = [](double) { return 1.0; };
    w.positive_sum = 2.0;
    w.negative_sum = 2.0;
    CHECK(lemma_constant(w, 2.0).value == doctest::Approx(2.0));       // (2C)^{1/2}
    CHECK(lemma_constant(w, 2.0, true).value == doctest::Approx(std::sqrt(2.0)));

    ProfileClass infinite;
    infinite.kind = ProfileClass::Kind::InfiniteCritical;
    CHECK_THROWS_AS(lemma_constant(infinite, 2.0), std::invalid_argument);
}

TEST_CASE("summable weight for the trigonometric critical sequences") {
    const auto cls = infinite_critical_class(builtin_profile(ProfileKind::sine));
    const SummableWeight w = default_summable_weight(cls);
    // Longer test-side sum as the oracle.
    double expect = 1.0;  // interval [0, t_1)
    for (int k = 1; k < 2000000; ++k) {
        const double t = M_PI_2 + (k - 1) * M_PI;
        expect += 1.0 / (1.0 + t * t);
    }
    CHECK(std::abs(w.positive_sum - expect) / expect < 0.01);
    CHECK(w.negative_sum == doctest::Approx(w.positive_sum).epsilon(1e-9));

    CHECK_THROWS_AS(infinite_critical_class(builtin_profile(ProfileKind::identity)), std::invalid_argument);
}

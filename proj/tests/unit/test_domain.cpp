#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "kolmo/domain.hpp"

using namespace kolmo;

namespace {

GroupPoint P1(double x, double y, double t) { return {Vec{x}, Vec{y}, t}; }

const SpatialDomain kUnit = SpatialDomain::box(Vec{-1.0}, Vec{1.0});

}  // namespace

TEST_SUITE("spatial domain") {
    TEST_CASE("constructors validate") {
        CHECK_THROWS(SpatialDomain::ball(Vec{0.0}, 0.0));
        CHECK_THROWS(SpatialDomain::box(Vec{1.0}, Vec{1.0}));
        CHECK_THROWS(SpatialDomain::box(Vec{0.0, 0.0}, Vec{1.0}));
    }

    TEST_CASE("signed distance and normals") {
        CHECK(kUnit.signed_distance(Vec{0.0}) == doctest::Approx(-1.0));
        CHECK(kUnit.signed_distance(Vec{1.0}) == 0.0);
        CHECK(kUnit.signed_distance(Vec{1.25}) == doctest::Approx(0.25));
        CHECK(kUnit.outward_normal(Vec{1.0})[0] == 1.0);
        CHECK(kUnit.outward_normal(Vec{-1.0})[0] == -1.0);

        const SpatialDomain disk = SpatialDomain::ball(Vec{0.0, 0.0}, 1.0);
        CHECK(disk.signed_distance(Vec{0.6, 0.8}) == doctest::Approx(0.0).epsilon(1e-15));
        const Vec n = disk.outward_normal(Vec{0.6, 0.8});
        CHECK(n[0] == doctest::Approx(0.6));
        CHECK(n[1] == doctest::Approx(0.8));

        const SpatialDomain sq = SpatialDomain::box(Vec{-1.0, -1.0}, Vec{1.0, 1.0});
        CHECK(sq.signed_distance(Vec{2.0, 2.0}) == doctest::Approx(std::sqrt(2.0)));
        CHECK(sq.signed_distance(Vec{0.5, 0.0}) == doctest::Approx(-0.5));
        // Corner tie goes to the lowest axis.
        const Vec c = sq.outward_normal(Vec{1.0, 1.0});
        CHECK(c[0] == 1.0);
        CHECK(c[1] == 0.0);
    }

    TEST_CASE("signed distance has unit gradient away from the medial axis") {
        const SpatialDomain disk = SpatialDomain::ball(Vec{0.2, -0.1}, 0.7);
        oracle::Sampler s(4);
        for (int i = 0; i < 200; ++i) {
            const Vec x{s(-1.5, 1.5), s(-1.5, 1.5)};
            if (norm(x - Vec{0.2, -0.1}) < 0.05) continue;
            oracle::FiniteDifferences fd{[&](const std::vector<double>& v) {
                                             return disk.signed_distance(Vec{v[0], v[1]});
                                         },
                                         1e-6};
            const double gx = fd.d1({x[0], x[1]}, 0), gy = fd.d1({x[0], x[1]}, 1);
            CHECK(std::hypot(gx, gy) == doctest::Approx(1.0).epsilon(1e-6));
        }
    }

    TEST_CASE("bounding box and radius bound") {
        const auto [lo, hi] = kUnit.bounding_box(0.1);
        CHECK(lo[0] == doctest::Approx(-1.1));
        CHECK(hi[0] == doctest::Approx(1.1));
        CHECK(kUnit.radius_bound() == 1.0);
        CHECK(SpatialDomain::ball(Vec{1.0, 0.0}, 2.0).radius_bound() == 3.0);
        CHECK(SpatialDomain::ball(Vec{0.0}, 0.3).radius_bound() == 1.0);
    }
}

TEST_SUITE("classification") {
    TEST_CASE("parabolic collar examples") {
        const ParabolicCollar c(kUnit, 0.1, 0.5);
        CHECK(classify_parabolic(P1(0.5, 3.0, 0.4), c) == ParabolicRegion::Interior);
        CHECK(classify_parabolic(P1(1.05, 0.0, 0.4), c) == ParabolicRegion::LateralCollar);
        CHECK(classify_parabolic(P1(0.5, 0.0, -0.004), c) == ParabolicRegion::InitialCollar);
        CHECK(classify_parabolic(P1(1.099, 0.0, 0.4), c) == ParabolicRegion::LateralCollar);
        CHECK(classify_parabolic(P1(1.2, 0.0, 0.4), c) == ParabolicRegion::Outside);
        CHECK(classify_parabolic(P1(0.5, 0.0, -0.0051), c) == ParabolicRegion::Outside);
        CHECK(classify_parabolic(P1(0.5, 0.0, 0.6), c) == ParabolicRegion::Outside);
        CHECK(classify_parabolic(P1(1.0, 0.0, -0.001), c) == ParabolicRegion::LateralCollar);
    }

    TEST_CASE("parabolic labels partition the extended cylinder") {
        const SpatialDomain disk = SpatialDomain::ball(Vec{0.0, 0.0}, 1.0);
        const ParabolicCollar c(disk, 0.2, 0.3);
        RandomStream rng(9);
        int counts[4] = {0, 0, 0, 0};
        for (int i = 0; i < 5000; ++i) {
            const Vec X{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
            const double t = rng.uniform(-0.02, 0.3);
            if (!(t > -0.02) || !c.in_extended_domain(X)) continue;
            const auto r = classify_parabolic({X, Vec{0.0, 0.0}, t}, c);
            CHECK(r != ParabolicRegion::Outside);
            const bool lateral = c.in_lateral_band(X);
            const bool initial = disk.contains(X) && t <= 0.0;
            const bool interior = disk.contains(X) && t > 0.0;
            CHECK(lateral + initial + interior == 1);
            ++counts[static_cast<int>(r)];
        }
        CHECK(counts[0] > 0);
        CHECK(counts[1] > 0);
        CHECK(counts[2] > 0);
    }

    TEST_CASE("Kolmogorov boundary examples") {
        const SpatialDomain u = kUnit;
        CHECK(classify_kolmogorov(P1(0.5, 1.0, 0.2), u, u, 1.0) == KolmogorovRegion::Outflow);
        CHECK(classify_kolmogorov(P1(-0.5, 1.0, 0.2), u, u, 1.0) == KolmogorovRegion::NoData);
        CHECK(classify_kolmogorov(P1(0.2, 0.3, 0.0), u, u, 1.0) == KolmogorovRegion::Initial);
        CHECK(classify_kolmogorov(P1(1.0, 0.3, 0.2), u, u, 1.0) == KolmogorovRegion::Lateral);
        CHECK(classify_kolmogorov(P1(0.2, 0.3, 0.5), u, u, 1.0) == KolmogorovRegion::Interior);
        CHECK(classify_kolmogorov(P1(0.2, 0.3, 1.0), u, u, 1.0) == KolmogorovRegion::Other);
        CHECK_THROWS(classify_kolmogorov(P1(1.5, 0.3, 0.2), u, u, 1.0));
        CHECK_THROWS(classify_kolmogorov(P1(0.5, 0.3, -0.1), u, u, 1.0));
    }

    TEST_CASE("outflow split is exclusive on the Y boundary") {
        const SpatialDomain ux = SpatialDomain::box(Vec{-1.0, -1.0}, Vec{1.0, 1.0});
        const SpatialDomain uy = SpatialDomain::ball(Vec{0.0, 0.0}, 1.0);
        RandomStream rng(2);
        for (int i = 0; i < 1000; ++i) {
            const double a = rng.uniform(0.0, 6.283185307179586);
            const Vec Y{std::cos(a), std::sin(a)};
            const Vec X{rng.uniform(-0.99, 0.99), rng.uniform(-0.99, 0.99)};
            const auto r = classify_kolmogorov({X, Y, 0.3}, ux, uy, 1.0);
            const double flux = dot(X, uy.outward_normal(Y));
            CHECK(r == (flux > 0.0 ? KolmogorovRegion::Outflow : KolmogorovRegion::NoData));
        }
    }
}

TEST_SUITE("boundary data") {
    TEST_CASE("built-in data") {
        CHECK(constant_datum(2.5)(P1(0.3, 1.0, 0.2)) == 2.5);
        CHECK(*constant_datum(-2.5).bound == 2.5);
        CHECK(linear_datum(Vec{2.0}, 1.0)(P1(0.5, 9.0, 9.0)) == 2.0);
        CHECK(y_plus_tx_datum(1)(P1(0.5, 1.0, 0.4)) == doctest::Approx(1.2));
        CHECK_FALSE(y_plus_tx_datum(1).bound.has_value());
        const auto q = quadratic_p_datum(1, 3.0, kUnit, 0.5, 0.1);
        CHECK(q(P1(0.5, 0.0, 0.4)) == doctest::Approx(0.25 + 0.4));
        const auto qi = quadratic_p_datum(1, INFINITY, kUnit, 0.5, 0.1);
        CHECK(qi(P1(0.5, 0.0, 0.4)) == doctest::Approx(0.25 + 0.8));
        const auto sh = constant_datum(1.0).shifted(0.7);
        CHECK(sh(P1(0.0, 0.0, 0.0)) == 1.7);
        CHECK(*sh.bound == doctest::Approx(1.7));
    }

    TEST_CASE("quadratic_p bound holds on the collar") {
        const ParabolicCollar c(kUnit, 0.2, 0.5);
        const auto F = quadratic_p_datum(1, 3.0, kUnit, 0.5, 0.2);
        RandomStream rng(6);
        for (int i = 0; i < 2000; ++i) CHECK(std::abs(F(sample_collar_point(c, 2.0, rng))) <= *F.bound);
    }

    TEST_CASE("collar sampler stays on the collar") {
        const ParabolicCollar c(SpatialDomain::ball(Vec{0.0, 0.0}, 1.0), 0.1, 0.4);
        RandomStream rng(5);
        for (int i = 0; i < 2000; ++i) {
            const GroupPoint g = sample_collar_point(c, 1.0, rng);
            const auto r = classify_parabolic(g, c);
            CHECK((r == ParabolicRegion::LateralCollar || r == ParabolicRegion::InitialCollar));
        }
    }

    TEST_CASE("Lipschitz estimates on the collar") {
        const ParabolicCollar c(kUnit, 0.1, 0.5);
        CHECK(verify_g_eps_lipschitz(constant_datum(3.0), c, 1000) == 0.0);
        CHECK(verify_g_eps_lipschitz(linear_datum(Vec{1.0}), c, 1000) <= 1.0 + 1e-12);
        const double est = verify_g_eps_lipschitz(y_plus_tx_datum(1), c, 10000);
        MESSAGE("sampled Lipschitz estimate of y + t x: " << est);
        CHECK(std::isfinite(est));
        CHECK(est > 0.0);
        CHECK_THROWS(verify_g_eps_lipschitz(constant_datum(0.0), c, 1));
    }
}

TEST_SUITE("McShane extension") {
    TEST_CASE("single sample") {
        const GroupPoint g0 = P1(0.1, 0.2, 0.3);
        const auto F = mcshane_extend({{g0, 5.0}}, 2.0);
        CHECK(F(g0) == 5.0);
        CHECK(F(P1(3.0, 0.0, 0.0)) == 5.0);
    }

    TEST_CASE("two consistent samples are reproduced") {
        const GroupPoint a = P1(0.0, 0.0, 0.0), b = P1(1.0, 0.0, 0.0);
        const auto F = mcshane_extend({{a, 0.0}, {b, 0.5}}, 1.0);
        CHECK(F(a) == 0.0);
        CHECK(F(b) == 0.5);
        CHECK(F(P1(0.5, 0.0, 0.0)) == doctest::Approx(0.5));
    }

    TEST_CASE("violating pair is named") {
        const GroupPoint a = P1(0.0, 0.0, 0.0), b = P1(0.1, 0.0, 0.0);
        try {
            (void)mcshane_extend({{a, 0.0}, {b, 1.0}}, 1.0);
            FAIL("expected LipschitzViolation");
        } catch (const LipschitzViolation& e) {
            CHECK(((e.first == 0 && e.second == 1) || (e.first == 1 && e.second == 0)));
            CHECK(e.ratio == doctest::Approx(10.0));
        }
        CHECK_THROWS(mcshane_extend({{a, 0.0}}, 0.0));
    }

    TEST_CASE("clipped sin X + Y: bitwise reproduction, bound and Lipschitz constant") {
        RandomStream rng(31);
        std::vector<Sample> samples;
        for (int i = 0; i < 50; ++i) {
            const GroupPoint g = P1(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0, 1));
            samples.push_back({g, std::clamp(std::sin(g.X[0]) + g.Y[0], -1.0, 1.0)});
        }
        const double L = sample_lipschitz_constant(samples);
        const auto F = mcshane_extend(samples, L);
        for (const auto& s : samples) CHECK(F(s.point) == s.value);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const GroupPoint a = P1(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-1, 2));
            const GroupPoint b = P1(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-1, 2));
            CHECK(std::abs(F(a)) <= *F.bound);
            const double d = d_hat(a, b);
            if (d > 0.0) worst = std::max(worst, std::abs(F(a) - F(b)) / d);
        }
        CHECK(worst <= L * (1.0 + 1e-9));
    }
}

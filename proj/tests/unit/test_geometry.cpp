#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "kolmo/geometry.hpp"

using namespace kolmo;

namespace {

GroupPoint P1(double x, double y, double t) { return {Vec{x}, Vec{y}, t}; }

GroupPoint random_point(oracle::Sampler& s, std::size_t m, double scale = 2.0) {
    Vec X(m), Y(m);
    for (std::size_t i = 0; i < m; ++i) {
        X[i] = s(-scale, scale);
        Y[i] = s(-scale, scale);
    }
    return {X, Y, s(-scale, scale)};
}

double coord_dist(const GroupPoint& a, const GroupPoint& b) {
    double d = std::abs(a.t - b.t);
    for (std::size_t i = 0; i < a.dim(); ++i) d = std::max({d, std::abs(a.X[i] - b.X[i]), std::abs(a.Y[i] - b.Y[i])});
    return d;
}

double coord_scale(const GroupPoint& a) {
    double s = std::abs(a.t);
    for (std::size_t i = 0; i < a.dim(); ++i) s = std::max({s, std::abs(a.X[i]), std::abs(a.Y[i])});
    return 1.0 + s;
}

}  // namespace

TEST_CASE("compose matches hand substitution") {
    CHECK(compose(P1(1, 0, 0), P1(0, 0, 2)) == P1(1, -2, 2));
    const GroupPoint g = P1(0.3, -1.2, 0.7);
    CHECK(compose(GroupPoint::identity(1), g) == g);
    CHECK(compose(g, GroupPoint::identity(1)) == g);
}

TEST_CASE("inverse") {
    CHECK(inverse(P1(1, 2, 3)) == P1(-1, -5, -3));
    CHECK(inverse(GroupPoint::identity(1)) == GroupPoint::identity(1));
    oracle::Sampler s(7);
    for (std::size_t m : {1u, 2u, 3u}) {
        for (int i = 0; i < 200; ++i) {
            const GroupPoint g = random_point(s, m);
            CHECK(coord_dist(inverse(inverse(g)), g) <= 1e-14 * coord_scale(g));
            CHECK(coord_dist(compose(inverse(g), g), GroupPoint::identity(m)) <= 1e-14 * coord_scale(g) * coord_scale(g));
            CHECK(coord_dist(compose(g, inverse(g)), GroupPoint::identity(m)) <= 1e-14 * coord_scale(g) * coord_scale(g));
        }
    }
}

TEST_CASE("associativity on random triples") {
    oracle::Sampler s(11);
    for (std::size_t m : {1u, 2u}) {
        for (int i = 0; i < 2000; ++i) {
            const GroupPoint a = random_point(s, m), b = random_point(s, m), c = random_point(s, m);
            const GroupPoint l = compose(compose(a, b), c), r = compose(a, compose(b, c));
            CHECK(coord_dist(l, r) <= 1e-12 * coord_scale(l));
        }
    }
}

TEST_CASE("dilation") {
    CHECK(dilate(2.0, P1(1, 1, 1)) == P1(2, 8, 4));
    const GroupPoint g = P1(0.4, -0.1, 0.9);
    CHECK(dilate(1.0, g) == g);
    CHECK_THROWS_AS(dilate(0.0, g), std::invalid_argument);
    CHECK_THROWS_AS(dilate(-1.0, g), std::invalid_argument);
    oracle::Sampler s(3);
    for (int i = 0; i < 500; ++i) {
        const GroupPoint h = random_point(s, 2);
        const double r = s(0.1, 3.0), q = s(0.1, 3.0);
        CHECK(coord_dist(dilate(r, dilate(q, h)), dilate(r * q, h)) <= 1e-12 * coord_scale(dilate(r * q, h)));
        CHECK(quasi_norm(dilate(r, h)) == doctest::Approx(r * quasi_norm(h)).epsilon(1e-12));
    }
}

TEST_CASE("quasi-norm values") {
    CHECK(quasi_norm(P1(1, 8, 4)) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(quasi_norm(GroupPoint::identity(2)) == 0.0);
    CHECK(quasi_norm(P1(0, 0, -9)) == doctest::Approx(3.0));
    // Euclidean norms inside each block.
    const GroupPoint g{Vec{3.0, 4.0}, Vec{0.0, 0.0}, 0.0};
    CHECK(quasi_norm(g) == doctest::Approx(5.0));
}

TEST_CASE("d_K is a symmetric quasi-distance") {
    CHECK(d_K(P1(0, 0, 0), P1(1, 0, 0)) == doctest::Approx(1.0));
    oracle::Sampler s(5);
    for (int i = 0; i < 500; ++i) {
        const GroupPoint a = random_point(s, 2), b = random_point(s, 2);
        CHECK(d_K(a, a) == 0.0);
        CHECK(d_K(a, b) == d_K(b, a));
        CHECK(d_K(a, b) > 0.0);
    }
}

TEST_CASE("d_K pseudo-triangle constant is stable on fresh samples") {
    auto ratio = [](const GroupPoint& a, const GroupPoint& b, const GroupPoint& c) {
        return d_K(a, c) / (d_K(a, b) + d_K(b, c));
    };
    oracle::Sampler s(17);
    double C = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const GroupPoint a = random_point(s, 1, 1.0), b = random_point(s, 1, 1.0), c = random_point(s, 1, 1.0);
        C = std::max(C, ratio(a, b, c));
    }
    MESSAGE("sampled pseudo-triangle constant " << C);
    CHECK(C >= 1.0);
    CHECK(C < 3.0);
    oracle::Sampler fresh(18);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const GroupPoint a = random_point(fresh, 1, 1.0), b = random_point(fresh, 1, 1.0),
                         c = random_point(fresh, 1, 1.0);
        worst = std::max(worst, ratio(a, b, c));
    }
    CHECK(worst <= C * 1.05);
}

TEST_CASE("d_boundary") {
    const GroupPoint a = P1(0, 1, 0), b = P1(1, 0, 1);
    CHECK(d_boundary(a, b) == doctest::Approx(2.0));
    CHECK(d_boundary(a, a) == 0.0);
    // Not symmetric in general.
    CHECK(d_boundary(b, a) != doctest::Approx(d_boundary(a, b)));

    // Two-sided comparability with d_K on a bounded box.
    oracle::Sampler s(23);
    double lo = INFINITY, hi = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const GroupPoint x = random_point(s, 1, 1.0), y = random_point(s, 1, 1.0);
        const double r = d_boundary(x, y) / d_K(x, y);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    MESSAGE("d_boundary / d_K in [" << lo << ", " << hi << "]");
    CHECK(lo > 0.1);
    CHECK(hi < 10.0);
}

TEST_CASE("d_hat is a metric") {
    CHECK(d_hat(P1(0, 0, 0), P1(0, 4, 0)) == doctest::Approx(2.0));
    oracle::Sampler s(29);
    for (int i = 0; i < 10000; ++i) {
        const GroupPoint a = random_point(s, 2), b = random_point(s, 2), c = random_point(s, 2);
        CHECK(d_hat(a, a) == 0.0);
        CHECK(d_hat(a, b) == d_hat(b, a));
        CHECK(d_hat(a, c) <= (d_hat(a, b) + d_hat(b, c)) * (1.0 + 1e-12));
    }
}

TEST_CASE("dimension mismatch") {
    const GroupPoint a = P1(0, 0, 0);
    const GroupPoint b{Vec{0.0, 0.0}, Vec{0.0, 0.0}, 0.0};
    CHECK_THROWS_AS(compose(a, b), DimensionMismatch);
    CHECK_THROWS_AS(d_K(a, b), DimensionMismatch);
    CHECK_THROWS_AS(d_hat(a, b), DimensionMismatch);
    CHECK_THROWS_AS(d_boundary(a, b), DimensionMismatch);
    CHECK_THROWS_AS(GroupPoint(Vec{1.0}, Vec{1.0, 2.0}, 0.0), DimensionMismatch);
}

TEST_CASE("d_K agrees with the composed form") {
    oracle::Sampler s(31);
    for (int i = 0; i < 1000; ++i) {
        const GroupPoint a = random_point(s, 2), b = random_point(s, 2);
        const double composed = 0.5 * (quasi_norm(compose(inverse(b), a)) + quasi_norm(compose(inverse(a), b)));
        CHECK(d_K(a, b) == doctest::Approx(composed).epsilon(1e-6));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "kolmo/mean_value.hpp"

using namespace kolmo;

namespace {

GroupPoint P1(double x, double y, double t) { return {Vec{x}, Vec{y}, t}; }

const std::vector<MeanValueVariant> kAll = {
    MeanValueVariant::V1_shiftX,           MeanValueVariant::V2_pointwise_X, MeanValueVariant::V3_shiftXtilde,
    MeanValueVariant::V4_pointwise_Xtilde, MeanValueVariant::K_space_time,   MeanValueVariant::K2_space_time};

const std::vector<double> kLadder = {0.2, 0.1, 0.05};

}  // namespace

TEST_CASE("variant names round-trip") {
    for (auto v : kAll) CHECK(parse_variant(to_string(v)) == v);
    CHECK(parse_variant("V4_pointwise_Xtilde") == MeanValueVariant::V4_pointwise_Xtilde);
    CHECK_THROWS(parse_variant("V5"));
    CHECK(tug_variants().size() == 4);
}

TEST_CASE("constants are reproduced by every variant") {
    const auto c = profiles::constant(1, 2.5);
    for (auto v : kAll)
        for (double p : {2.0, 3.0, kInfP}) {
            CHECK(mv_value(c, P1(0.2, 0.1, 0.5), p, 0.1, v) == doctest::Approx(2.5).epsilon(1e-14));
            CHECK(std::abs(mv_residual(c, P1(0.2, 0.1, 0.5), p, 0.1, v)) <= 1e-14);
        }
}

TEST_CASE("affine profile under V4") {
    const auto phi = profiles::affine(Vec{0.7, -0.4}, 0.3);
    const GroupPoint g{Vec{0.2, 0.1}, Vec{0.0, 0.5}, 0.4};
    for (double p : {2.0, 3.0, 10.0, kInfP})
        CHECK(mv_value(phi, g, p, 0.1, MeanValueVariant::V4_pointwise_Xtilde) ==
              doctest::Approx(phi.value(g)).epsilon(1e-9));
}

TEST_CASE("y + t x is a fixed point of V4 for every eps") {
    const auto phi = profiles::y_plus_tx(Vec{1.0});
    for (double eps : {0.4, 0.2, 0.1, 0.05})
        for (double p : {2.0, 3.0, kInfP}) {
            const GroupPoint g = P1(0.3, -0.2, 0.45);
            CHECK(std::abs(mv_residual(phi, g, p, eps, MeanValueVariant::V4_pointwise_Xtilde)) <= 1e-12);
        }
}

TEST_CASE("V4 for x^2 against a hand computation") {
    // max and min of x^2 on [x-eps, x+eps] sit at the endpoints; the mean is x^2 + eps^2/3.
    const auto phi = profiles::square_x(1);
    const double x = 0.5, eps = 0.1;
    auto fo = [](const std::vector<double>& v) { return v[0] * v[0]; };
    const double avg = oracle::ball_average(fo, {x}, eps, 20000);
    for (double p : {2.0, 3.0, 10.0, kInfP}) {
        const auto [alpha, beta] = oracle::coin(p, 1);
        const double expect = 0.5 * alpha * ((x + eps) * (x + eps) + (x - eps) * (x - eps)) + beta * avg;
        CHECK(mv_value(phi, P1(x, 0.0, 0.3), p, eps, MeanValueVariant::V4_pointwise_Xtilde) ==
              doctest::Approx(expect).epsilon(1e-9));
    }
    const double r = mv_residual(phi, P1(x, 0.0, 0.3), 2.0, eps, MeanValueVariant::V4_pointwise_Xtilde);
    CHECK(r == doctest::Approx(eps * eps / 3.0).epsilon(0.1));
}

TEST_CASE("V4 for |X|^2 in the plane against the oracle") {
    const auto phi = profiles::square_x(2);
    const std::vector<double> x = {0.5, 0.3};
    const double eps = 0.1, rx = std::hypot(x[0], x[1]);
    auto fo = [](const std::vector<double>& v) { return v[0] * v[0] + v[1] * v[1]; };
    const double avg = oracle::ball_average(fo, x, eps, 1500);
    CHECK(avg == doctest::Approx(rx * rx + eps * eps / 2.0).epsilon(1e-5));
    const double p = 3.0;
    const auto [alpha, beta] = oracle::coin(p, 2);
    const double expect = 0.5 * alpha * ((rx + eps) * (rx + eps) + (rx - eps) * (rx - eps)) + beta * avg;
    const GroupPoint g{Vec{x[0], x[1]}, Vec{0.0, 0.0}, 0.3};
    CHECK(mv_value(phi, g, p, eps, MeanValueVariant::V4_pointwise_Xtilde) == doctest::Approx(expect).epsilon(1e-7));
}

TEST_CASE("space-time averages of y") {
    // Shift -(t~ - t) X averaged over the window w gives X w / 2.
    const auto phi = profiles::coordinate_y(1);
    const double x = 0.6, eps = 0.1;
    const GroupPoint g = P1(x, 0.2, 0.5);
    CHECK(mv_residual(phi, g, 2.0, eps, MeanValueVariant::K_space_time) ==
          doctest::Approx(x * eps * eps / 6.0).epsilon(1e-9));
    CHECK(mv_residual(phi, g, 2.0, eps, MeanValueVariant::K2_space_time) ==
          doctest::Approx(x * eps * eps / 2.0).epsilon(1e-9));
}

TEST_CASE("constant shift and monotonicity") {
    const GroupPoint g = P1(0.4, 0.1, 0.3);
    const auto phi = profiles::trig_exp(1);
    const auto bump = SmoothProfile::analytic(
        "trig_exp+bump", 1,
        [phi](const GroupPoint& q) { return phi.value(q) + 0.05 * std::exp(-q.X[0] * q.X[0]); },
        [phi](const GroupPoint& q) { return phi.jet(q); });
    for (auto v : kAll)
        for (double p : {2.0, 3.0, kInfP}) {
            const double base = mv_value(phi, g, p, 0.1, v);
            const double shifted = mv_value(add_constant(phi, 1.25), g, p, 0.1, v);
            CHECK(shifted == doctest::Approx(base + 1.25).epsilon(1e-14));
            CHECK(mv_value(bump, g, p, 0.1, v) >= base - 1e-12);
        }
}

TEST_CASE("limit estimate for x^2 matches the closed form") {
    const auto phi = profiles::square_x(1);
    const GroupPoint g = P1(0.5, 0.3, 0.7);
    for (double p : {2.0, 3.0, kInfP})
        for (auto v : tug_variants()) {
            const auto est = mv_limit_estimate(phi, g, p, v, kLadder);
            CHECK(est.limit == doctest::Approx(oracle::x_squared_limit(p)).epsilon(0.05));
            CHECK(est.scaled.size() == 3);
        }
    for (auto v : {MeanValueVariant::K_space_time, MeanValueVariant::K2_space_time}) {
        const auto est = mv_limit_estimate(phi, g, 2.0, v, kLadder);
        CHECK(est.limit == doctest::Approx(1.0 / 3.0).epsilon(0.05));
    }
}

TEST_CASE("limit estimate vanishes on exact solutions") {
    const auto phi = profiles::y_plus_tx(Vec{1.0});
    for (double p : {2.0, 3.0, kInfP})
        for (auto v : tug_variants())
            CHECK(std::abs(mv_limit_estimate(phi, P1(0.4, 0.2, 0.6), p, v, kLadder).limit) <= 1e-6);
}

TEST_CASE("limit consistency and variant agreement on non-solutions") {
    const GroupPoint g1 = P1(0.5, 0.3, 0.7);
    const GroupPoint g2{Vec{0.5, 0.3}, Vec{0.2, -0.1}, 0.7};
    for (const char* name : {"mixed", "trig_exp"})
        for (std::size_t m : {1u, 2u}) {
            const auto phi = profiles::by_name(name, m, 3.0);
            const GroupPoint& g = m == 1 ? g1 : g2;
            std::vector<double> lim;
            for (auto v : tug_variants()) {
                const auto est = mv_limit_estimate(phi, g, 3.0, v, kLadder);
                const double ref = mv_limit_oracle(phi, g, 3.0, v);
                CHECK(est.limit == doctest::Approx(ref).epsilon(0.05));
                lim.push_back(est.limit);
            }
            CHECK(lim[0] == doctest::Approx(lim[2]).epsilon(0.05));
            CHECK(lim[1] == doctest::Approx(lim[3]).epsilon(0.05));
        }
}

TEST_CASE("oracle against independent arithmetic") {
    const auto phi = profiles::square_x(1);
    for (double p : {2.0, 3.0, 10.0, kInfP})
        CHECK(mv_limit_oracle(phi, P1(0.5, 0.0, 0.0), p, MeanValueVariant::V2_pointwise_X) ==
              doctest::Approx(oracle::x_squared_limit(p)));
}

TEST_CASE("Richardson step") {
    // f(e) = L + c e is extrapolated exactly.
    CHECK(richardson_first_order(0.2, 1.0 + 0.4, 0.1, 1.0 + 0.2) == doctest::Approx(1.0));
}

TEST_CASE("input validation") {
    const auto phi = profiles::square_x(1);
    const GroupPoint g = P1(0.5, 0.0, 0.5);
    auto V4 = MeanValueVariant::V4_pointwise_Xtilde;
    CHECK_THROWS_AS(mv_limit_estimate(phi, g, 2.0, V4, {0.2, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(mv_limit_estimate(phi, g, 2.0, V4, {0.2, 0.15, 0.05}), std::invalid_argument);
    CHECK_THROWS_AS(mv_value(phi, g, 2.0, 0.0, V4), std::invalid_argument);
    MeanValueQuadrature coarse;
    coarse.x_ball.n_angular = 4;
    CHECK_THROWS_AS(mv_value(phi, g, 2.0, 0.1, V4, coarse), QuadratureTooCoarse);

    // Residuals that grow along the ladder are flagged.
    const auto spiky = SmoothProfile::analytic(
        "spiky", 1, [](const GroupPoint& q) { return std::cos(400.0 * q.X[0]); },
        [](const GroupPoint& q) {
            Jet j;
            j.value = std::cos(400.0 * q.X[0]);
            j.gradX = Vec{-400.0 * std::sin(400.0 * q.X[0])};
            j.hessX = SymMat(1);
            j.hessX(0, 0) = -160000.0 * std::cos(400.0 * q.X[0]);
            j.gradY = Vec{0.0};
            return j;
        });
    CHECK_THROWS_AS(mv_limit_estimate(spiky, P1(0.0, 0.0, 0.5), 2.0, V4, {0.04, 0.02, 0.01, 0.005}),
                    NonMonotoneResidual);
}

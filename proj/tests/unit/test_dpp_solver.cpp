#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kolmo/dpp_solver.hpp"
#include "kolmo/operators.hpp"

using namespace kolmo;

namespace {

SolveConfig small_config(double p = 3.0) {
    SolveConfig c;
    c.p = p;
    c.eps = 0.2;
    c.T = 0.2;
    c.hX = c.hY = 0.025;
    c.threads = 1;
    return c;
}

BoundaryDatum wavy() {
    BoundaryDatum F;
    F.name = "wavy";
    F.evaluate = [](const GroupPoint& g) { return std::sin(2.0 * g.X[0] + g.Y[0]) + 0.3 * std::cos(3.0 * g.t); };
    F.bound = 1.3;
    return F;
}

std::pair<double, double> active_range(const ValueGrid& g) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t j = 0; j < g.n_slices(); ++j)
        for (double v : g.slice(j))
            if (!std::isnan(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
    return {lo, hi};
}

double max_abs_diff(const ValueGrid& a, const ValueGrid& b, double shift = 0.0) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.n_slices(); ++j)
        for (std::size_t i = 0; i < a.slice(j).size(); ++i) {
            const double x = a.slice(j)[i], y = b.slice(j)[i];
            if (std::isnan(x) != std::isnan(y)) return INFINITY;
            if (!std::isnan(x)) worst = std::max(worst, std::abs(x - y - shift));
        }
    return worst;
}

}  // namespace

TEST_SUITE("time ladder") {
    TEST_CASE("ladder arithmetic") {
        auto a = time_ladder(1.0, 0.2);
        CHECK(a.N == 50);
        CHECK(a.times.back() == 0.0);
        auto b = time_ladder(0.05, 0.2);
        CHECK(b.N == 3);
        CHECK(b.times.back() == doctest::Approx(-0.01));
        auto c = time_ladder(0.02, 0.2);
        CHECK(c.N == 1);
        CHECK(c.times.back() == 0.0);
        CHECK(c.times.size() == 2);
        CHECK(time_ladder(0.0, 0.2).N == 0);
        CHECK(time_ladder(-0.01, 0.2).N == 0);
        CHECK_THROWS_AS(time_ladder(-0.021, 0.2), std::out_of_range);
        for (std::size_t k = 1; k < a.times.size(); ++k)
            CHECK(a.times[k - 1] - a.times[k] == doctest::Approx(0.02).epsilon(1e-12));
    }
}

TEST_SUITE("value grid") {
    TEST_CASE("geometry and slice times") {
        const ValueGrid g = make_grid(small_config());
        CHECK(g.n_slices() == 11);
        CHECK(g.slice_time(g.n_slices() - 1) == doctest::Approx(0.2));
        CHECK(g.slice_time(0) <= 0.0);
        CHECK(g.slice_time(0) > -0.02);
        CHECK(g.slice_time(1) > 0.0);
        for (std::size_t j = 1; j < g.n_slices(); ++j)
            CHECK(g.slice_time(j) - g.slice_time(j - 1) == doctest::Approx(0.02).epsilon(1e-12));
        CHECK(g.slice_index(g.slice_time(4)) == 4);
        CHECK_THROWS_AS((void)g.slice_index(0.011), GridQueryOutOfRange);
        CHECK(g.x_axis(0).lo <= -1.2 + 1e-12);
        CHECK(g.x_axis(0).hi() >= 1.2 - 1e-12);
        CHECK(g.hX() == 0.025);
        // Windows shrink toward the final slice.
        for (std::size_t j = 1; j < g.n_slices(); ++j) {
            CHECK(g.window(j).lo[0] >= g.window(j - 1).lo[0]);
            CHECK(g.window(j).hi[0] <= g.window(j - 1).hi[0]);
        }
    }

    TEST_CASE("Y box covers the reachability margin") {
        const SolveConfig c = small_config();
        const ValueGrid g = make_grid(c);
        const double margin = (c.T + c.eps * c.eps) * (c.domain.radius_bound() + c.eps);
        CHECK(g.y_axis(0).lo <= c.y_seed_lo[0] - margin);
        CHECK(g.y_axis(0).hi() >= c.y_seed_hi[0] + margin);
    }

    TEST_CASE("multilinear interpolation is exact on bilinear data") {
        const SolveConfig c = small_config();
        ValueGrid g = initialize(c, constant_datum(0.0), 0.0);
        auto f = [](const Vec& X, const Vec& Y) { return 0.3 + 1.7 * X[0] - 0.4 * Y[0] + 0.9 * X[0] * Y[0]; };
        const std::size_t j = 3;
        for (std::size_t ix = 0; ix < g.x_count(); ++ix)
            for (std::size_t iy : g.window_indices(j)) g.slice(j)[g.index(ix, iy)] = f(g.node_X(ix), g.node_Y(iy));
        RandomStream rng(1);
        for (int i = 0; i < 500; ++i) {
            const Vec X{rng.uniform(-1.1, 1.1)}, Y{rng.uniform(-0.6, 0.6)};
            CHECK(g.interpolate(j, X, Y) == doctest::Approx(f(X, Y)).epsilon(1e-12));
        }
        // Node hits return the stored value.
        CHECK(g.interpolate(j, g.node_X(7), g.node_Y(g.window(j).lo[0] + 2)) ==
              g.slice(j)[g.index(7, g.window(j).lo[0] + 2)]);
    }

    TEST_CASE("out-of-range and inactive queries") {
        const ValueGrid g = initialize(small_config(), constant_datum(1.0), 0.0);
        CHECK_THROWS_AS((void)g.interpolate(1, Vec{5.0}, Vec{0.0}), GridQueryOutOfRange);
        CHECK_THROWS_AS((void)g.interpolate(1, Vec{0.0}, Vec{100.0}), GridQueryOutOfRange);
        const std::size_t top = g.n_slices() - 1;
        const double beyond = g.node_Y(g.window(top).hi[0])[0] + 3.5 * g.hY();
        CHECK_THROWS_AS((void)g.interpolate(top, Vec{0.0}, Vec{beyond}), GridQueryOutOfRange);
    }

    TEST_CASE("evaluate uses F on the collar and before time zero") {
        const SolveConfig c = small_config();
        const auto F = y_plus_tx_datum(1);
        const ValueGrid g = initialize(c, F, 123.0);
        CHECK(g.evaluate(0, Vec{0.3}, Vec{0.1}) == F(GroupPoint(Vec{0.3}, Vec{0.1}, g.slice_time(0))));
        CHECK(g.evaluate(5, Vec{1.05}, Vec{0.1}) == F(GroupPoint(Vec{1.05}, Vec{0.1}, g.slice_time(5))));
        CHECK(g.evaluate(5, Vec{0.3}, Vec{0.1}) == 123.0);
    }

    TEST_CASE("binary round trip and CSV layout") {
        const SolveConfig c = small_config();
        const ValueGrid g = solve(c, wavy());
        std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
        g.write_binary(bin);
        const ValueGrid r = ValueGrid::read_binary(bin);
        CHECK(r.same_geometry(g));
        CHECK(r.p() == g.p());
        for (std::size_t j = 0; j < g.n_slices(); ++j) {
            CHECK(r.window(j).lo[0] == g.window(j).lo[0]);
            CHECK(r.window(j).hi[0] == g.window(j).hi[0]);
            for (std::size_t i = 0; i < g.slice(j).size(); ++i) {
                const double a = g.slice(j)[i], b = r.slice(j)[i];
                CHECK(((std::isnan(a) && std::isnan(b)) || a == b));
            }
        }
        std::ostringstream csv;
        g.write_csv(csv);
        const std::string text = csv.str();
        CHECK(text.rfind("t,x1,y1,value\n", 0) == 0);

        SolveConfig ci = c;
        ci.p = kInfP;
        const ValueGrid gi = make_grid(ci);
        std::stringstream b2(std::ios::in | std::ios::out | std::ios::binary);
        gi.write_binary(b2);
        CHECK(std::isinf(ValueGrid::read_binary(b2).p()));
    }

    TEST_CASE("round-trip decimal formatting") {
        for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 12345.678, 0.0}) CHECK(std::stod(format_double(x)) == x);
        CHECK(format_double(0.5) == "0.5");
    }
}

TEST_SUITE("solver") {
    TEST_CASE("config validation") {
        SolveConfig c = small_config(1.5);
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c = small_config();
        c.hX = 0.03;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c = small_config();
        c.eps = -1.0;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        CHECK_NOTHROW(small_config(kInfP).validate());
    }

    TEST_CASE("constant data gives a constant solution") {
        for (double p : {2.0, 3.0, kInfP}) {
            const ValueGrid g = solve(small_config(p), constant_datum(0.75));
            const auto [lo, hi] = active_range(g);
            CHECK(lo == doctest::Approx(0.75).epsilon(1e-14));
            CHECK(hi == doctest::Approx(0.75).epsilon(1e-14));
        }
    }

    TEST_CASE("apply_T examples") {
        const SolveConfig c = small_config();
        const BallRule rule = solver_rule(c);

        const ValueGrid lin = initialize(c, linear_datum(Vec{0.8}, 0.1), 0.0);
        const auto out = apply_T(lin, 1, rule, 1);
        for (std::size_t ix = 0; ix < lin.x_count(); ++ix)
            for (std::size_t iy : lin.window_indices(1))
                CHECK(out[lin.index(ix, iy)] == doctest::Approx(0.8 * lin.node_X(ix)[0] + 0.1).epsilon(1e-12));

        // The exact solution on the earlier slice maps to the exact solution.
        const auto F = y_plus_tx_datum(1);
        ValueGrid g = initialize(c, F, 0.0);
        const std::size_t j = 5;
        for (std::size_t ix = 0; ix < g.x_count(); ++ix)
            for (std::size_t iy : g.window_indices(j - 1))
                g.slice(j - 1)[g.index(ix, iy)] = F(GroupPoint(g.node_X(ix), g.node_Y(iy), g.slice_time(j - 1)));
        const double h = std::max(c.hX, c.hY);
        for (double x : {-0.7, 0.0, 0.35})
            for (double y : {-0.3, 0.2}) {
                const double v = apply_T_at(g, j, Vec{x}, Vec{y}, rule);
                CHECK(std::abs(v - (y + g.slice_time(j) * x)) <= 10.0 * h * h);
            }
        CHECK_THROWS_AS((void)apply_T_at(g, 0, Vec{0.0}, Vec{0.0}, rule), std::out_of_range);
    }

    TEST_CASE("boundary nodes store F exactly") {
        const SolveConfig c = small_config();
        const auto F = wavy();
        const ValueGrid g = solve(c, F);
        for (std::size_t j = 0; j < g.n_slices(); ++j) {
            const double t = g.slice_time(j);
            for (std::size_t ix = 0; ix < g.x_count(); ++ix) {
                const Vec X = g.node_X(ix);
                if (t > 0.0 && c.domain.contains(X)) continue;
                for (std::size_t iy : g.window_indices(j))
                    CHECK(g.slice(j)[g.index(ix, iy)] == F(GroupPoint(X, g.node_Y(iy), t)));
            }
        }
    }

    TEST_CASE("fixed point residual") {
        const SolveConfig c = small_config();
        const BallRule rule = solver_rule(c);
        CHECK(fixed_point_residual(solve(c, constant_datum(2.0)), rule, 1) == 0.0);
        CHECK(fixed_point_residual(solve(c, wavy()), rule, 1) <= 1e-12);
        CHECK(fixed_point_residual(solve(c, y_plus_tx_datum(1)), rule, 1) <= 10.0 * c.hX * c.hX);
    }

    TEST_CASE("y + t x is reproduced to interpolation accuracy") {
        for (double p : {2.0, 3.0, kInfP}) {
            const SolveConfig c = small_config(p);
            const ValueGrid g = solve(c, y_plus_tx_datum(1));
            const double err = max_node_error(
                g, [](const GroupPoint& q) { return q.Y[0] + q.t * q.X[0]; }, 0.0, c.T);
            CHECK(err <= 10.0 * c.hX * c.hX);
        }
    }

    TEST_CASE("two-dimensional solve") {
        SolveConfig c;
        c.domain = SpatialDomain::ball(Vec{0.0, 0.0}, 0.6);
        c.eps = 0.4;
        c.T = 0.08;
        c.hX = c.hY = 0.05;
        c.y_seed_lo = Vec{-0.2, -0.2};
        c.y_seed_hi = Vec{0.2, 0.2};
        c.threads = 1;
        const ValueGrid g = solve(c, y_plus_tx_datum(2, Vec{1.0, 1.0}));
        CHECK(g.n_slices() == 2);
        const double s = 1.0 / std::sqrt(2.0);
        const double err = max_node_error(
            g, [s](const GroupPoint& q) { return s * (q.Y[0] + q.Y[1]) + q.t * s * (q.X[0] + q.X[1]); }, 0.0, c.T);
        CHECK(err <= 10.0 * c.hX * c.hX);
    }

    TEST_CASE("constant shift, bounds and comparison") {
        const SolveConfig c = small_config();
        const auto F = wavy();
        const ValueGrid u = solve(c, F);
        const ValueGrid v = solve(c, F.shifted(0.7));
        CHECK(max_abs_diff(v, u, 0.7) <= 1e-12);

        const auto [lo, hi] = active_range(u);
        CHECK(lo >= -1.3 - 1e-12);
        CHECK(hi <= 1.3 + 1e-12);

        BoundaryDatum bumped = F;
        bumped.evaluate = [F](const GroupPoint& g) { return F(g) + 0.2 * std::exp(-4.0 * g.Y[0] * g.Y[0]); };
        const ValueGrid w = solve(c, bumped);
        CHECK(compare(w, u).dominates);
        CHECK(compare(u, u).dominates);
        const auto r = compare(u, solve(c, F.shifted(1.0)));
        CHECK_FALSE(r.dominates);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->a < r.witness->b);

        SolveConfig other = c;
        other.hY = 0.0125;
        CHECK_THROWS_AS(compare(u, make_grid(other)), std::invalid_argument);
    }

    TEST_CASE("T is monotone") {
        const SolveConfig c = small_config();
        const BallRule rule = solver_rule(c);
        ValueGrid a = initialize(c, wavy(), 0.0), b = initialize(c, wavy(), 0.0);
        RandomStream rng(8);
        const std::size_t j = 4;
        for (std::size_t i = 0; i < a.slice(j - 1).size(); ++i) {
            if (std::isnan(a.slice(j - 1)[i])) continue;
            const double base = rng.uniform(-1.0, 1.0);
            a.slice(j - 1)[i] = base + rng.uniform(0.0, 0.5);
            b.slice(j - 1)[i] = base;
        }
        const auto ta = apply_T(a, j, rule, 1), tb = apply_T(b, j, rule, 1);
        for (std::size_t i = 0; i < ta.size(); ++i)
            if (!std::isnan(ta[i])) CHECK(ta[i] >= tb[i] - 1e-12);
    }

    TEST_CASE("N sweeps forget the interior initialization") {
        const SolveConfig c = small_config();
        const BallRule rule = solver_rule(c);
        const std::size_t N = time_ladder(c.T, c.eps).N;
        ValueGrid a = initialize(c, wavy(), 0.0), b = initialize(c, wavy(), 1e6);
        for (std::size_t s = 0; s + 1 < N; ++s) {
            sweep(a, rule, 1);
            sweep(b, rule, 1);
        }
        CHECK(max_abs_diff(a, b) > 1.0);
        sweep(a, rule, 1);
        sweep(b, rule, 1);
        CHECK(max_abs_diff(a, b) <= 1e-12);
        CHECK(max_abs_diff(a, solve(c, wavy())) == 0.0);
    }

    TEST_CASE("results do not depend on the thread count") {
        SolveConfig c = small_config();
        const ValueGrid one = solve(c, wavy());
        c.threads = 3;
        const ValueGrid three = solve(c, wavy());
        CHECK(max_abs_diff(one, three) == 0.0);
    }
}

#include "kolmo/dpp_solver.hpp"

#include <cmath>
#include <limits>

#include "kolmo/operators.hpp"
#include "kolmo/parallel.hpp"

namespace kolmo {

void SolveConfig::validate() const {
    const std::size_t m = dim();
    if (!(p >= 2.0)) throw std::invalid_argument("p: the solver requires p >= 2 (got " + format_p(p) + ")");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps: must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("T: must be positive");
    if (!(hX > 0.0) || hX > eps / 8.0 * (1.0 + 1e-12))
        throw std::invalid_argument("hX: must lie in (0, eps/8] to resolve the step ball");
    if (!(hY > 0.0)) throw std::invalid_argument("hY: must be positive");
    if (y_seed_lo.size() != m || y_seed_hi.size() != m)
        throw std::invalid_argument("y_seed: dimension differs from the domain's");
    for (std::size_t a = 0; a < m; ++a)
        if (!(y_seed_lo[a] <= y_seed_hi[a])) throw std::invalid_argument("y_seed: lo must not exceed hi");
    if (ball_samples != 0 && ball_samples < 8) throw std::invalid_argument("ball_samples: need at least 8");
}

BallRule solver_rule(const SolveConfig& config) {
    const std::size_t m = config.dim();
    const std::size_t n = config.ball_samples;
    if (n == 0) return solver_ball_rule(m);
    BallQuadrature q;
    if (m == 1) {
        q.n_angular = n - 2;
    } else if (m == 2) {
        if (n % 32 != 0 || n < 64) throw std::invalid_argument("ball_samples: m = 2 needs a multiple of 32, >= 64");
        q.n_angular = 32;
        q.n_radial = n / 32 - 1;
    } else {
        q.mode = QuadratureMode::QuasiRandom;
        q.n_points = n / 2;
    }
    return make_ball_rule(m, q);
}

ValueGrid make_grid(const SolveConfig& config) {
    config.validate();
    const std::size_t m = config.dim();
    const double eps = config.eps;
    const auto [bb_lo, bb_hi] = config.domain.bounding_box(eps);
    std::vector<GridAxis> xa(m), ya(m);
    for (std::size_t a = 0; a < m; ++a) {
        const double width = bb_hi[a] - bb_lo[a];
        const auto n = static_cast<std::size_t>(std::ceil(width / config.hX - 1e-9)) + 1;
        const double c = 0.5 * (bb_lo[a] + bb_hi[a]);
        xa[a] = {c - 0.5 * config.hX * static_cast<double>(n - 1), config.hX, n};
    }

    const double R = config.domain.radius_bound();
    const double drift = 0.5 * eps * eps * (R + eps);
    const std::size_t N = time_ladder(config.T, eps).N;
    // Y-index growth per slice going back in time; floor + 1 absorbs rounding.
    const auto k = static_cast<std::size_t>(std::floor(drift / config.hY)) + 1;
    const double margin = std::max(static_cast<double>(N * k + 2) * config.hY, (config.T + eps * eps) * (R + eps));
    for (std::size_t a = 0; a < m; ++a) {
        const double lo = config.y_seed_lo[a] - margin, hi = config.y_seed_hi[a] + margin;
        const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / config.hY - 1e-9)) + 1;
        const double c = 0.5 * (lo + hi);
        ya[a] = {c - 0.5 * config.hY * static_cast<double>(n - 1), config.hY, n};
    }

    ValueGrid grid(m, config.p, eps, config.T, xa, ya);
    YWindow top;
    for (std::size_t a = 0; a < m; ++a) {
        const double s_lo = (config.y_seed_lo[a] - ya[a].lo) / config.hY;
        const double s_hi = (config.y_seed_hi[a] - ya[a].lo) / config.hY;
        top.lo[a] = static_cast<std::size_t>(std::max(0.0, std::floor(s_lo) - 1.0));
        top.hi[a] = std::min(ya[a].n - 1, static_cast<std::size_t>(std::ceil(s_hi)) + 1);
    }
    YWindow w = top;
    for (std::size_t j = N + 1; j-- > 0;) {
        grid.window(j) = w;
        for (std::size_t a = 0; a < m; ++a) {
            w.lo[a] = w.lo[a] >= k ? w.lo[a] - k : 0;
            w.hi[a] = std::min(ya[a].n - 1, w.hi[a] + k);
        }
    }
    return grid;
}

ValueGrid initialize(const SolveConfig& config, const BoundaryDatum& F, double fill) {
    ValueGrid grid = make_grid(config);
    grid.attach_boundary(config.domain, F);
    for (std::size_t j = 0; j < grid.n_slices(); ++j) {
        const double t = grid.slice_time(j);
        const auto ys = grid.window_indices(j);
        auto& v = grid.slice(j);
        parallel_for(grid.x_count(), config.threads, [&](std::size_t ix) {
            const Vec X = grid.node_X(ix);
            const bool interior = t > 0.0 && config.domain.contains(X);
            for (std::size_t iy : ys) v[grid.index(ix, iy)] = interior ? fill : F(GroupPoint(X, grid.node_Y(iy), t));
        });
    }
    return grid;
}

double apply_T_at(const ValueGrid& grid, std::size_t target, const Vec& X, const Vec& Y, const BallRule& rule) {
    if (target == 0) throw std::out_of_range("apply_T: slice 0 has no predecessor");
    const double eps = grid.eps();
    const double h = 0.5 * eps * eps;
    const TugWeights w = tug_weights(grid.p(), grid.dim());
    const bool need_extrema = w.alpha > 0.0;
    double vmax = -std::numeric_limits<double>::infinity();
    double vmin = std::numeric_limits<double>::infinity();
    double mean = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double wi = rule.weights[i];
        if (wi == 0.0 && !need_extrema) continue;
        const Vec Xt = X + eps * rule.points[i];
        const double v = grid.evaluate(target - 1, Xt, Y + h * Xt);
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
        mean += wi * v;
    }
    double out = 0.0;
    if (need_extrema) out += 0.5 * w.alpha * (vmax + vmin);
    if (w.beta > 0.0) out += w.beta * mean;
    return out;
}

std::vector<double> apply_T(const ValueGrid& grid, std::size_t target, const BallRule& rule, std::size_t threads) {
    if (!grid.has_boundary()) throw std::logic_error("apply_T: grid has no boundary datum attached");
    std::vector<double> out(grid.nodes_per_slice(), std::numeric_limits<double>::quiet_NaN());
    const double t = grid.slice_time(target);
    const auto ys = grid.window_indices(target);
    parallel_for(grid.x_count(), threads, [&](std::size_t ix) {
        const Vec X = grid.node_X(ix);
        const bool interior = t > 0.0 && grid.domain().contains(X);
        for (std::size_t iy : ys) {
            const Vec Y = grid.node_Y(iy);
            out[grid.index(ix, iy)] =
                interior ? apply_T_at(grid, target, X, Y, rule) : grid.datum()(GroupPoint(X, Y, t));
        }
    });
    return out;
}

ValueGrid solve(const SolveConfig& config, const BoundaryDatum& F) {
    ValueGrid grid = initialize(config, F, 0.0);
    const BallRule rule = solver_rule(config);
    for (std::size_t j = 1; j < grid.n_slices(); ++j) grid.slice(j) = apply_T(grid, j, rule, config.threads);
    return grid;
}

void sweep(ValueGrid& grid, const BallRule& rule, std::size_t threads) {
    std::vector<std::vector<double>> next(grid.n_slices());
    for (std::size_t j = 1; j < grid.n_slices(); ++j) next[j] = apply_T(grid, j, rule, threads);
    for (std::size_t j = 1; j < grid.n_slices(); ++j) grid.slice(j) = std::move(next[j]);
}

double fixed_point_residual(const ValueGrid& grid, const BallRule& rule, std::size_t threads) {
    double worst = 0.0;
    for (std::size_t j = 1; j < grid.n_slices(); ++j) {
        const auto fresh = apply_T(grid, j, rule, threads);
        const auto& stored = grid.slice(j);
        for (std::size_t i = 0; i < fresh.size(); ++i)
            if (!std::isnan(fresh[i])) worst = std::max(worst, std::abs(fresh[i] - stored[i]));
    }
    return worst;
}

CompareResult compare(const ValueGrid& a, const ValueGrid& b, double tol) {
    if (!a.same_geometry(b)) throw std::invalid_argument("compare: grids have different geometry");
    for (std::size_t j = 0; j < a.n_slices(); ++j) {
        const auto& va = a.slice(j);
        const auto& vb = b.slice(j);
        for (std::size_t i = 0; i < va.size(); ++i) {
            const bool na = std::isnan(va[i]), nb = std::isnan(vb[i]);
            if (na && nb) continue;
            if (na != nb) throw std::invalid_argument("compare: active windows differ");
            if (va[i] < vb[i] - tol) {
                const std::size_t ix = i / a.y_count(), iy = i % a.y_count();
                return {false, GridNodeRef{j, i, a.node_X(ix), a.node_Y(iy), a.slice_time(j), va[i], vb[i]}};
            }
        }
    }
    return {true, std::nullopt};
}

namespace {

bool inside_box(const Vec& v, const std::optional<std::pair<Vec, Vec>>& box) {
    if (!box) return true;
    for (std::size_t a = 0; a < v.size(); ++a)
        if (v[a] < box->first[a] - 1e-12 || v[a] > box->second[a] + 1e-12) return false;
    return true;
}

}  // namespace

double max_node_error(const ValueGrid& grid, const std::function<double(const GroupPoint&)>& exact, double t_lo,
                      double t_hi, std::optional<std::pair<Vec, Vec>> x_box, std::optional<std::pair<Vec, Vec>> y_box) {
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.n_slices(); ++j) {
        const double t = grid.slice_time(j);
        if (t < t_lo - 1e-12 || t > t_hi + 1e-12) continue;
        const auto ys = grid.window_indices(j);
        for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
            const Vec X = grid.node_X(ix);
            if (grid.has_boundary() && !grid.domain().contains(X)) continue;
            if (!inside_box(X, x_box)) continue;
            for (std::size_t iy : ys) {
                const Vec Y = grid.node_Y(iy);
                if (!inside_box(Y, y_box)) continue;
                const double v = grid.slice(j)[grid.index(ix, iy)];
                worst = std::max(worst, std::abs(v - exact(GroupPoint(X, Y, t))));
            }
        }
    }
    return worst;
}

}  // namespace kolmo

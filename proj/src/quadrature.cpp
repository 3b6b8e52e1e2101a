#include "kolmo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kolmo/rng.hpp"

namespace kolmo {

GaussRule gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0, p1 = x;
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            // Final derivative at the converged root.
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            dp = n == 1 ? 1.0 : nd * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

namespace {

double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double inv = 1.0 / static_cast<double>(base), f = inv, out = 0.0;
    while (i > 0) {
        out += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return out;
}

constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

BallRule tensor_rule_1d(const BallQuadrature& q) {
    BallRule r;
    r.m = 1;
    const GaussRule g = gauss_legendre(q.n_angular);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        r.points.push_back(Vec{g.nodes[i]});
        r.weights.push_back(0.5 * g.weights[i]);
    }
    if (q.include_boundary) {
        r.points.insert(r.points.begin(), Vec{-1.0});
        r.weights.insert(r.weights.begin(), 0.0);
        r.points.push_back(Vec{1.0});
        r.weights.push_back(0.0);
    }
    double gap = 0.0;
    for (std::size_t i = 1; i < r.points.size(); ++i) gap = std::max(gap, r.points[i][0] - r.points[i - 1][0]);
    r.spacing = std::max(gap, 1.0 + g.nodes.front());
    return r;
}

BallRule tensor_rule_2d(const BallQuadrature& q) {
    BallRule r;
    r.m = 2;
    const GaussRule g = gauss_legendre(q.n_radial);
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(q.n_angular);
    std::vector<double> radii;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        // Gauss in rho = r^2 on [0, 1]: the area element is (1/2) d rho d theta.
        const double rho = 0.5 * (g.nodes[i] + 1.0);
        const double rad = std::sqrt(rho);
        radii.push_back(rad);
        const double w_rho = 0.5 * g.weights[i];
        for (std::size_t k = 0; k < q.n_angular; ++k) {
            const double a = dtheta * static_cast<double>(k);
            r.points.push_back(Vec{rad * std::cos(a), rad * std::sin(a)});
            r.weights.push_back(w_rho / static_cast<double>(q.n_angular));
        }
    }
    if (q.include_boundary) {
        for (std::size_t k = 0; k < q.n_angular; ++k) {
            const double a = dtheta * static_cast<double>(k);
            r.points.push_back(Vec{std::cos(a), std::sin(a)});
            r.weights.push_back(0.0);
        }
        radii.push_back(1.0);
    }
    double gap = radii.front();
    for (std::size_t i = 1; i < radii.size(); ++i) gap = std::max(gap, radii[i] - radii[i - 1]);
    r.spacing = std::max(gap, dtheta);
    r.angular_spacing = dtheta;
    return r;
}

BallRule quasi_random_rule(std::size_t m, const BallQuadrature& q) {
    if (m > 8) throw std::invalid_argument("quasi-random ball rule supports m <= 8");
    BallRule r;
    r.m = m;
    RandomStream shift_rng(q.seed, 0xba11);
    std::vector<double> shift(m);
    for (auto& s : shift) s = shift_rng.uniform();
    const std::size_t half = std::max<std::size_t>(q.n_points / 2, 4);
    std::vector<Vec> interior, boundary;
    for (std::uint64_t i = 1; interior.size() < half || (q.include_boundary && boundary.size() < half); ++i) {
        Vec v(m);
        for (std::size_t k = 0; k < m; ++k) {
            double u = radical_inverse(i, kPrimes[k]) + shift[k];
            u -= std::floor(u);
            v[k] = 2.0 * u - 1.0;
        }
        const double n2 = dot(v, v);
        if (n2 < 1.0 && interior.size() < half) interior.push_back(v);
        if (q.include_boundary && n2 > 1e-8 && n2 <= 1.0 && boundary.size() < half)
            boundary.push_back(v * (1.0 / std::sqrt(n2)));
    }
    const double w = 1.0 / static_cast<double>(2 * interior.size());
    for (const auto& v : interior) {
        r.points.push_back(v);
        r.weights.push_back(w);
        r.points.push_back(-v);
        r.weights.push_back(w);
    }
    for (const auto& v : boundary) {
        r.points.push_back(v);
        r.weights.push_back(0.0);
        r.points.push_back(-v);
        r.weights.push_back(0.0);
    }
    r.spacing = 2.0 * std::pow(static_cast<double>(r.points.size()), -1.0 / static_cast<double>(m));
    return r;
}

}  // namespace

BallRule make_ball_rule(std::size_t m, const BallQuadrature& q) {
    if (m == 0 || m > kMaxDim) throw std::invalid_argument("ball rule: unsupported dimension");
    if (q.mode == QuadratureMode::QuasiRandom || m > 2) return quasi_random_rule(m, q);
    if (q.n_angular == 0 || (m == 2 && q.n_radial == 0))
        throw std::invalid_argument("ball rule: empty tensor grid");
    if (m == 2 && q.n_angular % 2 != 0) throw std::invalid_argument("ball rule: n_angular must be even");
    return m == 1 ? tensor_rule_1d(q) : tensor_rule_2d(q);
}

BallRule solver_ball_rule(std::size_t m) {
    BallQuadrature q;
    if (m == 1) {
        q.n_angular = 62;
    } else if (m == 2) {
        q.n_radial = 7;
        q.n_angular = 32;
    } else {
        q.mode = QuadratureMode::QuasiRandom;
        q.n_points = 512;
    }
    return make_ball_rule(m, q);
}

double golden_section_max(const std::function<double(double)>& f, double a, double b, int iterations) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iterations && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

namespace {

/// Improves a best sample u (unit-ball coordinates) of g by golden-section
/// passes along local coordinates. sign = +1 maximizes, -1 minimizes.
void refine_extremum(const std::function<double(const Vec&)>& g, const BallRule& rule, double sign, Vec& u,
                     double& best) {
    auto consider = [&](const Vec& cand) {
        const double v = g(cand);
        if (sign * v > sign * best) {
            best = v;
            u = cand;
        }
    };
    const std::size_t m = rule.m;
    const double delta = rule.spacing;
    if (m == 1) {
        const double lo = std::max(-1.0, u[0] - delta), hi = std::min(1.0, u[0] + delta);
        const double s = golden_section_max([&](double x) { return sign * g(Vec{x}); }, lo, hi);
        consider(Vec{s});
        return;
    }
    if (m == 2 && rule.angular_spacing > 0.0) {
        const double r0 = norm(u);
        double theta = std::atan2(u[1], u[0]);
        auto polar = [](double r, double a) { return Vec{r * std::cos(a), r * std::sin(a)}; };
        if (r0 < 1.0) {
            const double lo = std::max(0.0, r0 - delta), hi = std::min(1.0, r0 + delta);
            const double rs = golden_section_max([&](double r) { return sign * g(polar(r, theta)); }, lo, hi);
            consider(polar(rs, theta));
        }
        const double r1 = norm(u);
        theta = std::atan2(u[1], u[0]);
        const double da = rule.angular_spacing;
        const double as =
            golden_section_max([&](double a) { return sign * g(polar(r1, a)); }, theta - da, theta + da);
        consider(polar(r1, as));
        return;
    }
    for (std::size_t k = 0; k < m; ++k) {
        const double uk = u[k];
        const double disc = uk * uk - dot(u, u) + 1.0;
        if (disc <= 0.0) continue;
        const double root = std::sqrt(disc);
        const double lo = std::max(-uk - root, -delta), hi = std::min(-uk + root, delta);
        if (!(hi > lo)) continue;
        const Vec base = u;
        const double s = golden_section_max(
            [&](double step) {
                Vec c = base;
                c[k] += step;
                return sign * g(c);
            },
            lo, hi);
        Vec c = base;
        c[k] += s;
        consider(c);
    }
}

}  // namespace

BallExtrema ball_extrema(const std::function<double(const Vec&)>& f, const Vec& center, double radius,
                         const BallRule& rule, bool refine) {
    auto g = [&](const Vec& u) { return f(center + radius * u); };
    std::size_t imax = 0, imin = 0;
    double vmax = -INFINITY, vmin = INFINITY;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = g(rule.points[i]);
        if (v > vmax) vmax = v, imax = i;
        if (v < vmin) vmin = v, imin = i;
    }
    Vec umax = rule.points[imax], umin = rule.points[imin];
    if (refine) {
        refine_extremum(g, rule, 1.0, umax, vmax);
        refine_extremum(g, rule, -1.0, umin, vmin);
    }
    return {vmax, vmin, center + radius * umax, center + radius * umin};
}

double ball_average(const std::function<double(const Vec&)>& f, const Vec& center, double radius,
                    const BallRule& rule) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        if (rule.weights[i] != 0.0) s += rule.weights[i] * f(center + radius * rule.points[i]);
    return s;
}

}  // namespace kolmo

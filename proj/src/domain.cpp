#include "kolmo/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kolmo {

SpatialDomain SpatialDomain::ball(Vec center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball domain: radius must be positive");
    if (center.size() == 0) throw std::invalid_argument("ball domain: empty center");
    return SpatialDomain(BallShape{center, radius});
}

SpatialDomain SpatialDomain::box(Vec lo, Vec hi) {
    if (lo.size() != hi.size() || lo.size() == 0)
        throw std::invalid_argument("box domain: lo/hi dimension mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw std::invalid_argument("box domain: requires lo < hi componentwise");
    return SpatialDomain(BoxShape{lo, hi});
}

std::size_t SpatialDomain::dim() const {
    return is_ball() ? as_ball().center.size() : as_box().lo.size();
}

double SpatialDomain::signed_distance(const Vec& x) const {
    if (is_ball()) {
        const auto& b = as_ball();
        return norm(x - b.center) - b.radius;
    }
    const auto& b = as_box();
    double outside2 = 0.0;
    double max_face = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double below = b.lo[i] - x[i];
        const double above = x[i] - b.hi[i];
        const double d = std::max(below, above);
        max_face = std::max(max_face, d);
        if (d > 0.0) outside2 += d * d;
    }
    return outside2 > 0.0 ? std::sqrt(outside2) : max_face;
}

Vec SpatialDomain::outward_normal(const Vec& x) const {
    if (is_ball()) {
        const auto& b = as_ball();
        Vec d = x - b.center;
        const double n = norm(d);
        if (n == 0.0) {
            Vec e(x.size());
            e[0] = 1.0;
            return e;
        }
        return d * (1.0 / n);
    }
    const auto& b = as_box();
    std::size_t best_axis = 0;
    double best_sign = -1.0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double below = b.lo[i] - x[i];
        const double above = x[i] - b.hi[i];
        if (below > best) {
            best = below;
            best_axis = i;
            best_sign = -1.0;
        }
        if (above > best) {
            best = above;
            best_axis = i;
            best_sign = 1.0;
        }
    }
    Vec n(x.size());
    n[best_axis] = best_sign;
    return n;
}

std::pair<Vec, Vec> SpatialDomain::bounding_box(double pad) const {
    if (is_ball()) {
        const auto& b = as_ball();
        Vec lo = b.center, hi = b.center;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            lo[i] -= b.radius + pad;
            hi[i] += b.radius + pad;
        }
        return {lo, hi};
    }
    const auto& b = as_box();
    Vec lo = b.lo, hi = b.hi;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] -= pad;
        hi[i] += pad;
    }
    return {lo, hi};
}

double SpatialDomain::radius_bound() const {
    double r = 0.0;
    if (is_ball()) {
        r = norm(as_ball().center) + as_ball().radius;
    } else {
        const auto& b = as_box();
        double s = 0.0;
        for (std::size_t i = 0; i < b.lo.size(); ++i) {
            const double c = std::max(std::abs(b.lo[i]), std::abs(b.hi[i]));
            s += c * c;
        }
        r = std::sqrt(s);
    }
    return std::max(1.0, r);
}

std::string SpatialDomain::describe() const {
    std::ostringstream os;
    auto list = [&os](const Vec& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    };
    if (is_ball()) {
        os << "ball(center=";
        list(as_ball().center);
        os << ";radius=" << as_ball().radius << ")";
    } else {
        os << "box(lo=";
        list(as_box().lo);
        os << ";hi=";
        list(as_box().hi);
        os << ")";
    }
    return os.str();
}

ParabolicCollar::ParabolicCollar(SpatialDomain d, double eps, double T)
    : domain(std::move(d)), epsilon(eps), horizon(T) {
    if (!(eps > 0.0)) throw std::invalid_argument("collar: epsilon must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("collar: horizon must be positive");
}

bool ParabolicCollar::in_lateral_band(const Vec& x) const {
    const double sd = domain.signed_distance(x);
    return sd >= 0.0 && sd <= epsilon;
}

bool ParabolicCollar::in_extended_domain(const Vec& x) const {
    return domain.signed_distance(x) <= epsilon;
}

ParabolicRegion classify_parabolic(const GroupPoint& g, const ParabolicCollar& c) {
    const double sd = c.domain.signed_distance(g.X);
    const bool in_time = g.t > c.time_floor() && g.t <= c.horizon;
    if (!in_time) return ParabolicRegion::Outside;
    if (sd >= 0.0) return sd <= c.epsilon ? ParabolicRegion::LateralCollar : ParabolicRegion::Outside;
    return g.t > 0.0 ? ParabolicRegion::Interior : ParabolicRegion::InitialCollar;
}

std::string to_string(ParabolicRegion r) {
    switch (r) {
        case ParabolicRegion::Interior: return "Interior";
        case ParabolicRegion::LateralCollar: return "LateralCollar";
        case ParabolicRegion::InitialCollar: return "InitialCollar";
        case ParabolicRegion::Outside: return "Outside";
    }
    return "?";
}

KolmogorovRegion classify_kolmogorov(const GroupPoint& g, const SpatialDomain& ux, const SpatialDomain& uy,
                                     double T) {
    auto tol = [](const Vec& v) { return 1e-12 * (1.0 + norm(v)); };
    const double sx = ux.signed_distance(g.X);
    const double sy = uy.signed_distance(g.Y);
    const double tx = tol(g.X), ty = tol(g.Y);
    if (sx > tx || sy > ty || g.t < 0.0 || g.t > T)
        throw std::invalid_argument("classify_kolmogorov: point outside the closure of U_X x U_Y x [0,T]");

    const bool x_bdry = std::abs(sx) <= tx;
    const bool y_bdry = std::abs(sy) <= ty;
    const bool x_open = sx < -tx;
    const bool y_open = sy < -ty;
    const bool before_T = g.t < T;

    if (x_bdry && before_T) return KolmogorovRegion::Lateral;
    if (y_bdry && before_T) {
        const double flux = dot(g.X, uy.outward_normal(g.Y));
        if (flux > 0.0) return KolmogorovRegion::Outflow;
        if (x_open) return KolmogorovRegion::NoData;
    }
    if (x_open && y_open && g.t == 0.0) return KolmogorovRegion::Initial;
    if (x_open && y_open && g.t > 0.0 && before_T) return KolmogorovRegion::Interior;
    return KolmogorovRegion::Other;
}

std::string to_string(KolmogorovRegion r) {
    switch (r) {
        case KolmogorovRegion::Lateral: return "Lateral";
        case KolmogorovRegion::Outflow: return "Outflow";
        case KolmogorovRegion::Initial: return "Initial";
        case KolmogorovRegion::NoData: return "NoData";
        case KolmogorovRegion::Interior: return "Interior";
        case KolmogorovRegion::Other: return "Other";
    }
    return "?";
}

BoundaryDatum BoundaryDatum::shifted(double c) const {
    BoundaryDatum out = *this;
    out.name = name + "+" + std::to_string(c);
    auto inner = evaluate;
    out.evaluate = [inner, c](const GroupPoint& g) { return inner(g) + c; };
    if (bound) out.bound = *bound + std::abs(c);
    return out;
}

BoundaryDatum constant_datum(double c) {
    return {"const", [c](const GroupPoint&) { return c; }, std::abs(c), 0.0};
}

BoundaryDatum linear_datum(Vec a, double b) {
    BoundaryDatum d;
    d.name = "linear";
    d.evaluate = [a, b](const GroupPoint& g) { return dot(a, g.X) + b; };
    d.lipschitz = norm(a);
    return d;
}

BoundaryDatum y_plus_tx_datum(std::size_t m, std::optional<Vec> e) {
    Vec dir(m);
    if (e) {
        dir = *e;
        const double n = norm(dir);
        if (dir.size() != m || n == 0.0) throw std::invalid_argument("y_plus_tx: direction must be nonzero in R^m");
        dir *= 1.0 / n;
    } else {
        dir[0] = 1.0;
    }
    BoundaryDatum d;
    d.name = "y_plus_tx";
    d.evaluate = [dir](const GroupPoint& g) { return dot(g.Y, dir) + g.t * dot(g.X, dir); };
    return d;
}

BoundaryDatum quadratic_p_datum(std::size_t m, double p, const SpatialDomain& ux, double T, double eps) {
    const double md = static_cast<double>(m);
    const double c = std::isinf(p) ? 2.0 : 2.0 * (md + p - 2.0) / (md + p);
    BoundaryDatum d;
    d.name = "quadratic_p";
    d.evaluate = [c](const GroupPoint& g) { return dot(g.X, g.X) + c * g.t; };
    const double r = ux.radius_bound() + eps;
    d.bound = r * r + std::abs(c) * std::max(T, 0.5 * eps * eps);
    return d;
}

LipschitzViolation::LipschitzViolation(std::size_t i, std::size_t j, double r)
    : std::invalid_argument("McShane extension: samples " + std::to_string(i) + " and " + std::to_string(j) +
                            " violate the declared Lipschitz constant (ratio " + std::to_string(r) + ")"),
      first(i),
      second(j),
      ratio(r) {}

BoundaryDatum mcshane_extend(std::vector<Sample> samples, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("mcshane_extend: L must be positive");
    if (samples.empty()) throw std::invalid_argument("mcshane_extend: no samples");
    // Checked with the exact expression the evaluator uses so that sample
    // points are reproduced bitwise.
    for (std::size_t k = 0; k < samples.size(); ++k) {
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (j == k) continue;
            const double d = d_hat(samples[k].point, samples[j].point);
            if (samples[j].value + L * d < samples[k].value) {
                const double ratio = d > 0.0 ? std::abs(samples[k].value - samples[j].value) / d
                                             : std::numeric_limits<double>::infinity();
                throw LipschitzViolation(j, k, ratio);
            }
        }
    }
    double B = 0.0;
    for (const auto& s : samples) B = std::max(B, std::abs(s.value));

    BoundaryDatum out;
    out.name = "custom-table";
    out.bound = B;
    out.evaluate = [samples = std::move(samples), L, B](const GroupPoint& q) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : samples) best = std::min(best, s.value + L * d_hat(q, s.point));
        return std::clamp(best, -B, B);
    };
    return out;
}

double sample_lipschitz_constant(const std::vector<Sample>& samples) {
    double best = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            const double d = d_hat(samples[i].point, samples[j].point);
            if (!(d > 0.0)) continue;
            const double lo = std::min(samples[i].value, samples[j].value);
            const double hi = std::max(samples[i].value, samples[j].value);
            double r = (hi - lo) / d;
            // Rounded up until lo + r d >= hi holds in floating point.
            while (lo + r * d < hi) r = std::nextafter(r, std::numeric_limits<double>::infinity());
            best = std::max(best, r);
        }
    return best;
}

GroupPoint sample_collar_point(const ParabolicCollar& c, double y_extent, RandomStream& rng) {
    const std::size_t m = c.domain.dim();
    const auto [lo, hi] = c.domain.bounding_box(c.epsilon);
    Vec Y(m);
    for (std::size_t i = 0; i < m; ++i) Y[i] = rng.uniform(-y_extent, y_extent);
    const double t_floor = c.time_floor();
    for (;;) {
        Vec X(m);
        for (std::size_t i = 0; i < m; ++i) X[i] = rng.uniform(lo[i], hi[i]);
        const double sd = c.domain.signed_distance(X);
        if (sd > c.epsilon) continue;
        // uniform(lo, hi) can return lo itself; the time window is open at the bottom.
        double t = 0.0;
        if (sd >= 0.0) {
            do t = rng.uniform(t_floor, c.horizon); while (t <= t_floor);
        } else {
            do t = rng.uniform(t_floor, 0.0); while (t <= t_floor);
        }
        return {X, Y, t};
    }
}

double verify_g_eps_lipschitz(const BoundaryDatum& F, const ParabolicCollar& collar, std::size_t n,
                              std::uint64_t seed, double y_extent) {
    if (n < 2) throw std::invalid_argument("verify_g_eps_lipschitz: need at least two samples");
    RandomStream rng(seed, 0x11u);
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const GroupPoint a = sample_collar_point(collar, y_extent, rng);
        const GroupPoint b = sample_collar_point(collar, y_extent, rng);
        const double d = d_boundary(a, b);
        if (d > 0.0) best = std::max(best, std::abs(F(a) - F(b)) / d);
    }
    return best;
}

}  // namespace kolmo

#include "kolmo/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace kolmo {

namespace {

double coordinate_norm(const GroupPoint& g) {
    return std::sqrt(dot(g.X, g.X) + dot(g.Y, g.Y) + g.t * g.t);
}

Jet zero_jet(std::size_t m) {
    Jet j;
    j.gradX = Vec(m);
    j.hessX = SymMat(m);
    j.gradY = Vec(m);
    return j;
}

}  // namespace

SmoothProfile SmoothProfile::analytic(std::string name, std::size_t m, ValueFn value, JetFn jet) {
    SmoothProfile p;
    p.name_ = std::move(name);
    p.m_ = m;
    p.value_ = std::move(value);
    p.jet_ = std::move(jet);
    p.mode_ = DerivativeMode::Analytic;
    return p;
}

SmoothProfile SmoothProfile::finite_difference(std::string name, std::size_t m, ValueFn value, double fd_scale) {
    if (!(fd_scale > 0.0)) throw std::invalid_argument("finite-difference step scale must be positive");
    SmoothProfile p;
    p.name_ = std::move(name);
    p.m_ = m;
    p.value_ = std::move(value);
    p.mode_ = DerivativeMode::FiniteDifference;
    p.fd_scale_ = fd_scale;
    return p;
}

SmoothProfile SmoothProfile::with_finite_differences(double fd_scale) const {
    return finite_difference(name_ + "[fd]", m_, value_, fd_scale);
}

Jet SmoothProfile::jet(const GroupPoint& g) const {
    if (mode_ == DerivativeMode::Analytic) return jet_(g);
    return fd_jet(g);
}

Jet SmoothProfile::fd_jet(const GroupPoint& g) const {
    const double h = fd_scale_ * (1.0 + coordinate_norm(g));
    Jet j = zero_jet(m_);
    j.value = value_(g);
    auto shifted = [&](std::size_t i, double di, std::size_t k, double dk) {
        GroupPoint q = g;
        q.X[i] += di;
        q.X[k] += dk;
        return value_(q);
    };
    for (std::size_t i = 0; i < m_; ++i) {
        GroupPoint plus = g, minus = g;
        plus.X[i] += h;
        minus.X[i] -= h;
        const double fp = value_(plus), fm = value_(minus);
        j.gradX[i] = (fp - fm) / (2.0 * h);
        j.hessX(i, i) = (fp - 2.0 * j.value + fm) / (h * h);
        for (std::size_t k = 0; k < i; ++k) {
            const double v = (shifted(i, h, k, h) - shifted(i, h, k, -h) - shifted(i, -h, k, h) +
                              shifted(i, -h, k, -h)) /
                             (4.0 * h * h);
            j.hessX(i, k) = v;
            j.hessX(k, i) = v;
        }
        GroupPoint yp = g, ym = g;
        yp.Y[i] += h;
        ym.Y[i] -= h;
        j.gradY[i] = (value_(yp) - value_(ym)) / (2.0 * h);
    }
    GroupPoint tp = g, tm = g;
    tp.t += h;
    tm.t -= h;
    j.dt = (value_(tp) - value_(tm)) / (2.0 * h);
    return j;
}

SmoothProfile left_translate(const SmoothProfile& phi, const GroupPoint& g0) {
    auto value = [phi, g0](const GroupPoint& g) { return phi.value(compose(g0, g)); };
    if (phi.mode() == DerivativeMode::FiniteDifference)
        return SmoothProfile::finite_difference(phi.name() + "@L", phi.dim(), value, phi.fd_scale());
    // Chain rule through (X0+X, Y0+Y-tX0, t0+t).
    auto jet = [phi, g0](const GroupPoint& g) {
        Jet j = phi.jet(compose(g0, g));
        j.dt -= dot(g0.X, j.gradY);
        return j;
    };
    return SmoothProfile::analytic(phi.name() + "@L", phi.dim(), value, jet);
}

SmoothProfile dilate_profile(const SmoothProfile& phi, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("dilate_profile: r must be positive");
    auto value = [phi, r](const GroupPoint& g) { return phi.value(dilate(r, g)); };
    if (phi.mode() == DerivativeMode::FiniteDifference)
        return SmoothProfile::finite_difference(phi.name() + "@delta", phi.dim(), value, phi.fd_scale());
    auto jet = [phi, r](const GroupPoint& g) {
        Jet j = phi.jet(dilate(r, g));
        j.gradX *= r;
        j.hessX *= r * r;
        j.gradY *= r * r * r;
        j.dt *= r * r;
        return j;
    };
    return SmoothProfile::analytic(phi.name() + "@delta", phi.dim(), value, jet);
}

SmoothProfile add_constant(const SmoothProfile& phi, double c) {
    auto value = [phi, c](const GroupPoint& g) { return phi.value(g) + c; };
    if (phi.mode() == DerivativeMode::FiniteDifference)
        return SmoothProfile::finite_difference(phi.name() + "+c", phi.dim(), value, phi.fd_scale());
    auto jet = [phi, c](const GroupPoint& g) {
        Jet j = phi.jet(g);
        j.value += c;
        return j;
    };
    return SmoothProfile::analytic(phi.name() + "+c", phi.dim(), value, jet);
}

SmoothProfile add_time_drift(const SmoothProfile& phi, double c) {
    auto value = [phi, c](const GroupPoint& g) { return phi.value(g) + c * g.t; };
    if (phi.mode() == DerivativeMode::FiniteDifference)
        return SmoothProfile::finite_difference(phi.name() + "+ct", phi.dim(), value, phi.fd_scale());
    auto jet = [phi, c](const GroupPoint& g) {
        Jet j = phi.jet(g);
        j.value += c * g.t;
        j.dt += c;
        return j;
    };
    return SmoothProfile::analytic(phi.name() + "+ct", phi.dim(), value, jet);
}

namespace profiles {

SmoothProfile constant(std::size_t m, double c) {
    return SmoothProfile::analytic(
        "const", m, [c](const GroupPoint&) { return c; },
        [m, c](const GroupPoint&) {
            Jet j = zero_jet(m);
            j.value = c;
            return j;
        });
}

SmoothProfile affine(Vec a, double b) {
    const std::size_t m = a.size();
    return SmoothProfile::analytic(
        "affine", m, [a, b](const GroupPoint& g) { return dot(a, g.X) + b; },
        [a, b, m](const GroupPoint& g) {
            Jet j = zero_jet(m);
            j.value = dot(a, g.X) + b;
            j.gradX = a;
            return j;
        });
}

SmoothProfile y_plus_tx(Vec e) {
    const std::size_t m = e.size();
    return SmoothProfile::analytic(
        "y_plus_tx", m, [e](const GroupPoint& g) { return dot(g.Y, e) + g.t * dot(g.X, e); },
        [e, m](const GroupPoint& g) {
            Jet j = zero_jet(m);
            j.value = dot(g.Y, e) + g.t * dot(g.X, e);
            j.gradX = g.t * e;
            j.gradY = e;
            j.dt = dot(g.X, e);
            return j;
        });
}

SmoothProfile square_x(std::size_t m) {
    return SmoothProfile::analytic(
        "x2", m, [](const GroupPoint& g) { return dot(g.X, g.X); },
        [m](const GroupPoint& g) {
            Jet j = zero_jet(m);
            j.value = dot(g.X, g.X);
            j.gradX = 2.0 * g.X;
            for (std::size_t i = 0; i < m; ++i) j.hessX(i, i) = 2.0;
            return j;
        });
}

SmoothProfile quadratic_p(std::size_t m, double p) {
    const double md = static_cast<double>(m);
    const double c = std::isinf(p) ? 2.0 : 2.0 * (md + p - 2.0) / (md + p);
    SmoothProfile base = add_time_drift(square_x(m), c);
    auto value = base.value_fn();
    return SmoothProfile::analytic("quadratic_p", m, value, [base](const GroupPoint& g) { return base.jet(g); });
}

SmoothProfile cube_x(std::size_t m) {
    return SmoothProfile::analytic(
        "x3", m, [](const GroupPoint& g) { return g.X[0] * g.X[0] * g.X[0]; },
        [m](const GroupPoint& g) {
            Jet j = zero_jet(m);
            const double x = g.X[0];
            j.value = x * x * x;
            j.gradX[0] = 3.0 * x * x;
            j.hessX(0, 0) = 6.0 * x;
            return j;
        });
}

SmoothProfile mixed(std::size_t m) {
    auto value = [m](const GroupPoint& g) {
        const double x1 = g.X[0], y1 = g.Y[0];
        return x1 * x1 * y1 + g.t * dot(g.X, g.X) + std::sin(g.Y[m - 1]) + x1 * g.t * g.t;
    };
    auto jet = [m, value](const GroupPoint& g) {
        Jet j = zero_jet(m);
        const double x1 = g.X[0], y1 = g.Y[0], t = g.t;
        j.value = value(g);
        j.gradX = 2.0 * t * g.X;
        j.gradX[0] += 2.0 * x1 * y1 + t * t;
        for (std::size_t i = 0; i < m; ++i) j.hessX(i, i) = 2.0 * t;
        j.hessX(0, 0) += 2.0 * y1;
        j.gradY[0] += x1 * x1;
        j.gradY[m - 1] += std::cos(g.Y[m - 1]);
        j.dt = dot(g.X, g.X) + 2.0 * x1 * t;
        return j;
    };
    return SmoothProfile::analytic("mixed", m, value, jet);
}

SmoothProfile trig_exp(std::size_t m) {
    Vec a(m), b(m);
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = 1.0 / static_cast<double>(i + 1);
        b[i] = 0.3 / static_cast<double>(i + 1);
    }
    auto value = [a, b](const GroupPoint& g) { return std::sin(dot(a, g.X)) * std::exp(dot(b, g.Y) - g.t); };
    auto jet = [a, b, m](const GroupPoint& g) {
        Jet j = zero_jet(m);
        const double s = std::sin(dot(a, g.X)), c = std::cos(dot(a, g.X));
        const double e = std::exp(dot(b, g.Y) - g.t);
        j.value = s * e;
        j.gradX = (c * e) * a;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k) j.hessX(i, k) = -s * e * a[i] * a[k];
        j.gradY = (s * e) * b;
        j.dt = -s * e;
        return j;
    };
    return SmoothProfile::analytic("trig_exp", m, value, jet);
}

SmoothProfile coordinate_y(std::size_t m) {
    return SmoothProfile::analytic(
        "y", m, [](const GroupPoint& g) { return g.Y[0]; },
        [m](const GroupPoint& g) {
            Jet j = zero_jet(m);
            j.value = g.Y[0];
            j.gradY[0] = 1.0;
            return j;
        });
}

SmoothProfile by_name(const std::string& name, std::size_t m, double p) {
    Vec e1(m);
    e1[0] = 1.0;
    if (name == "const") return constant(m, 1.0);
    if (name == "affine") return affine(e1, 0.0);
    if (name == "y_plus_tx") return y_plus_tx(e1);
    if (name == "x2") return square_x(m);
    if (name == "quadratic_p") return quadratic_p(m, p);
    if (name == "x3") return cube_x(m);
    if (name == "mixed") return mixed(m);
    if (name == "trig_exp") return trig_exp(m);
    if (name == "y") return coordinate_y(m);
    throw std::invalid_argument("unknown profile '" + name + "'");
}

}  // namespace profiles

}  // namespace kolmo

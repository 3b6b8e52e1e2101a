#include "kolmo/mean_value.hpp"

#include <cmath>
#include <limits>

namespace kolmo {

std::string to_string(MeanValueVariant v) {
    switch (v) {
        case MeanValueVariant::V1_shiftX: return "V1";
        case MeanValueVariant::V2_pointwise_X: return "V2";
        case MeanValueVariant::V3_shiftXtilde: return "V3";
        case MeanValueVariant::V4_pointwise_Xtilde: return "V4";
        case MeanValueVariant::K_space_time: return "K";
        case MeanValueVariant::K2_space_time: return "K2";
    }
    return "?";
}

MeanValueVariant parse_variant(const std::string& s) {
    if (s == "V1" || s == "V1_shiftX") return MeanValueVariant::V1_shiftX;
    if (s == "V2" || s == "V2_pointwise_X") return MeanValueVariant::V2_pointwise_X;
    if (s == "V3" || s == "V3_shiftXtilde") return MeanValueVariant::V3_shiftXtilde;
    if (s == "V4" || s == "V4_pointwise_Xtilde") return MeanValueVariant::V4_pointwise_Xtilde;
    if (s == "K" || s == "K_space_time") return MeanValueVariant::K_space_time;
    if (s == "K2" || s == "K2_space_time") return MeanValueVariant::K2_space_time;
    throw std::invalid_argument("unknown mean-value variant '" + s + "'");
}

const std::vector<MeanValueVariant>& tug_variants() {
    static const std::vector<MeanValueVariant> v{MeanValueVariant::V1_shiftX, MeanValueVariant::V2_pointwise_X,
                                                 MeanValueVariant::V3_shiftXtilde,
                                                 MeanValueVariant::V4_pointwise_Xtilde};
    return v;
}

namespace {

using XFn = std::function<double(const Vec&)>;

double tug_combination(const XFn& f, const Vec& X, double eps, const TugWeights& w, const BallRule& rule,
                       bool refine) {
    double v = 0.0;
    if (w.alpha > 0.0) {
        const BallExtrema ex = ball_extrema(f, X, eps, rule, refine);
        v += 0.5 * w.alpha * (ex.max + ex.min);
    }
    if (w.beta > 0.0) v += w.beta * ball_average(f, X, eps, rule);
    return v;
}

/// Average of h(Y~, t~) over B_{eps^3}(Y) x (t - window, t).
double space_time_average(const std::function<double(const Vec&, double)>& h, const GroupPoint& g, double eps,
                          double window, const BallRule& yrule, const GaussRule& trule) {
    const double ry = eps * eps * eps;
    double total = 0.0;
    for (std::size_t a = 0; a < trule.nodes.size(); ++a) {
        const double tt = g.t + 0.5 * window * (trule.nodes[a] - 1.0);
        double inner = 0.0;
        for (std::size_t b = 0; b < yrule.size(); ++b) {
            if (yrule.weights[b] == 0.0) continue;
            inner += yrule.weights[b] * h(g.Y + ry * yrule.points[b], tt);
        }
        total += 0.5 * trule.weights[a] * inner;
    }
    return total;
}

}  // namespace

double mv_value(const SmoothProfile& phi, const GroupPoint& g, double p, double eps, MeanValueVariant variant,
                const MeanValueQuadrature& quad) {
    if (!(eps > 0.0)) throw std::invalid_argument("mv_value: eps must be positive");
    const std::size_t m = g.dim();
    const TugWeights w = tug_weights(p, m);
    const BallRule xrule = make_ball_rule(m, quad.x_ball);
    if (xrule.size() < 8) throw QuadratureTooCoarse("mv_value: fewer than 8 X-ball samples");

    auto shifted = [&phi, &g](bool use_xtilde) {
        return [&phi, &g, use_xtilde](const Vec& Yt, double tt) -> XFn {
            return [&phi, &g, use_xtilde, Yt, tt](const Vec& Xt) {
                const Vec& s = use_xtilde ? Xt : g.X;
                return phi.value(GroupPoint(Xt, Yt - (tt - g.t) * s, tt));
            };
        };
    };

    switch (variant) {
        case MeanValueVariant::V2_pointwise_X:
        case MeanValueVariant::V4_pointwise_Xtilde: {
            const bool xt = variant == MeanValueVariant::V4_pointwise_Xtilde;
            const double h = 0.5 * eps * eps;
            const XFn f = [&](const Vec& Xt) {
                return phi.value(GroupPoint(Xt, g.Y + h * (xt ? Xt : g.X), g.t - h));
            };
            return tug_combination(f, g.X, eps, w, xrule, quad.refine);
        }
        default: break;
    }

    const BallRule yrule = make_ball_rule(m, quad.y_ball);
    if (yrule.size() < 8) throw QuadratureTooCoarse("mv_value: fewer than 8 Y-ball samples");
    if (quad.n_time == 0) throw QuadratureTooCoarse("mv_value: empty time rule");
    const GaussRule trule = gauss_legendre(quad.n_time);
    const double md = static_cast<double>(m);

    switch (variant) {
        case MeanValueVariant::V1_shiftX:
        case MeanValueVariant::V3_shiftXtilde: {
            const auto make = shifted(variant == MeanValueVariant::V3_shiftXtilde);
            return space_time_average(
                [&](const Vec& Yt, double tt) {
                    return tug_combination(make(Yt, tt), g.X, eps, w, xrule, quad.refine);
                },
                g, eps, eps * eps, yrule, trule);
        }
        case MeanValueVariant::K_space_time:
        case MeanValueVariant::K2_space_time: {
            const double window = variant == MeanValueVariant::K_space_time ? eps * eps / (md + 2.0) : eps * eps;
            const auto make = shifted(false);
            return space_time_average(
                [&](const Vec& Yt, double tt) { return ball_average(make(Yt, tt), g.X, eps, xrule); }, g, eps,
                window, yrule, trule);
        }
        default: break;
    }
    throw std::logic_error("mv_value: unhandled variant");
}

double mv_residual(const SmoothProfile& phi, const GroupPoint& g, double p, double eps, MeanValueVariant variant,
                   const MeanValueQuadrature& quad) {
    return mv_value(phi, g, p, eps, variant, quad) - phi.value(g);
}

double mv_limit_oracle(const SmoothProfile& phi, const GroupPoint& g, double p, MeanValueVariant variant) {
    const double md = static_cast<double>(g.dim());
    switch (variant) {
        case MeanValueVariant::K_space_time: return apply_K(phi, g) / (2.0 * (md + 2.0));
        case MeanValueVariant::K2_space_time: return apply_Kp(phi, g, 2.0) / (2.0 * (md + 2.0));
        default: break;
    }
    if (is_infinite_p(p)) return apply_Kp(phi, g, p) / 2.0;
    return apply_Kp(phi, g, p) / (2.0 * (md + p));
}

double richardson_first_order(double e0, double f0, double e1, double f1) {
    return (e0 * f1 - e1 * f0) / (e0 - e1);
}

LimitEstimate mv_limit_estimate(const SmoothProfile& phi, const GroupPoint& g, double p, MeanValueVariant variant,
                                const std::vector<double>& ladder, const MeanValueQuadrature& quad) {
    if (ladder.size() < 3) throw std::invalid_argument("mv_limit_estimate: ladder needs at least 3 entries");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0)) throw std::invalid_argument("mv_limit_estimate: ladder entries must be positive");
        if (i > 0 && ladder[i] > 0.5 * ladder[i - 1])
            throw std::invalid_argument("mv_limit_estimate: each ladder entry must be at most half the previous");
    }
    LimitEstimate out;
    const double base = phi.value(g);
    for (double e : ladder) {
        const double r = mv_value(phi, g, p, e, variant, quad) - base;
        out.epsilons.push_back(e);
        out.residuals.push_back(r);
        out.scaled.push_back(r / (e * e));
    }
    const double tol = 1e-11 * (1.0 + std::abs(base));
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (std::abs(out.residuals[i]) > std::abs(out.residuals[i - 1]) + tol)
            throw NonMonotoneResidual("residual magnitude grows from eps=" + std::to_string(ladder[i - 1]) +
                                      " to eps=" + std::to_string(ladder[i]) + "; quadrature noise suspected");
    }
    const std::size_t n = ladder.size();
    out.limit = richardson_first_order(ladder[n - 2], out.scaled[n - 2], ladder[n - 1], out.scaled[n - 1]);
    const double d1 = out.scaled[n - 2] - out.scaled[n - 3];
    const double d2 = out.scaled[n - 1] - out.scaled[n - 2];
    if (d1 == 0.0 || d2 == 0.0)
        out.observed_order = std::numeric_limits<double>::quiet_NaN();
    else
        out.observed_order = std::log(std::abs(d1 / d2)) / std::log(ladder[n - 2] / ladder[n - 1]);
    return out;
}

}  // namespace kolmo

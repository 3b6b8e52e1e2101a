#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kolmo/operators.hpp"
#include "kolmo/quadrature.hpp"

namespace kolmo {

/// Which asymptotic mean-value formula to evaluate.
///   V1: avg over Y~ in B_{eps^3}(Y), t~ in (t-eps^2, t) of the tug/noise
///       combination of u(X~, Y~ - (t~-t) X, t~) over X~ in B_eps(X).
///   V3: as V1 with the shift Y~ - (t~-t) X~.
///   V2: tug/noise combination of u(X~, Y + eps^2 X/2, t - eps^2/2).
///   V4: tug/noise combination of u(X~, Y + eps^2 X~/2, t - eps^2/2).
///   K_space_time / K2_space_time: plain average of u(X~, Y~ - (t~-t) X, t~)
///       with time window eps^2/(m+2) resp. eps^2.
enum class MeanValueVariant { V1_shiftX, V2_pointwise_X, V3_shiftXtilde, V4_pointwise_Xtilde, K_space_time, K2_space_time };

std::string to_string(MeanValueVariant v);
MeanValueVariant parse_variant(const std::string& s);
const std::vector<MeanValueVariant>& tug_variants();

struct MeanValueQuadrature {
    BallQuadrature x_ball{};
    BallQuadrature y_ball{8, 8, QuadratureMode::Tensor, 64, 0, false};
    std::size_t n_time = 8;
    bool refine = true;
};

class QuadratureTooCoarse : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonMonotoneResidual : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double mv_value(const SmoothProfile& phi, const GroupPoint& g, double p, double eps, MeanValueVariant variant,
                const MeanValueQuadrature& quad = {});

/// mv_value - phi(g).
double mv_residual(const SmoothProfile& phi, const GroupPoint& g, double p, double eps, MeanValueVariant variant,
                   const MeanValueQuadrature& quad = {});

/// Closed-form eps -> 0 limit of residual / eps^2:
/// K_p phi / (2(m+p)) for V1-V4 (K_inf phi / 2 for p = inf),
/// K phi / (2(m+2)) and K_2 phi / (2(m+2)) for the K variants.
double mv_limit_oracle(const SmoothProfile& phi, const GroupPoint& g, double p, MeanValueVariant variant);

struct LimitEstimate {
    double limit = 0.0;
    std::vector<double> epsilons;
    std::vector<double> residuals;
    std::vector<double> scaled;  // residual / eps^2
    /// Observed order of scaled(eps) -> limit from the last three entries; NaN if undetermined.
    double observed_order = 0.0;
};

/// First-order Richardson extrapolation of residual / eps^2 along a ladder of
/// >= 3 entries, each at most half the previous one.
LimitEstimate mv_limit_estimate(const SmoothProfile& phi, const GroupPoint& g, double p, MeanValueVariant variant,
                                const std::vector<double>& ladder, const MeanValueQuadrature& quad = {});

/// Richardson step on (eps, f) pairs, exposed for testing.
double richardson_first_order(double e0, double f0, double e1, double f1);

}  // namespace kolmo

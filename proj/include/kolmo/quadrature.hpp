#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kolmo/vec.hpp"

namespace kolmo {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(std::size_t n);

enum class QuadratureMode { Tensor, QuasiRandom };

/// How to sample the closed unit ball in R^m.
///   m = 1: n_angular Gauss-Legendre nodes (plus the two endpoints).
///   m = 2: n_radial Gauss nodes in r^2 times n_angular equispaced angles (plus
///          n_angular points on the unit circle).
///   otherwise / QuasiRandom: n_points antipodally paired Halton points
///          (plus as many boundary directions).
struct BallQuadrature {
    std::size_t n_radial = 16;
    std::size_t n_angular = 32;
    QuadratureMode mode = QuadratureMode::Tensor;
    std::size_t n_points = 512;
    std::uint64_t seed = 0;
    bool include_boundary = true;
};

/// Sample set of the closed unit ball. `weights` average over the ball (sum to
/// one); boundary points carry zero weight and only serve extremum searches.
struct BallRule {
    std::size_t m = 0;
    std::vector<Vec> points;
    std::vector<double> weights;
    /// Typical distance between neighbouring samples; bounds local refinement.
    double spacing = 0.0;
    /// Angular spacing of boundary points (m = 2), used by refinement.
    double angular_spacing = 0.0;

    [[nodiscard]] std::size_t size() const { return points.size(); }
};

BallRule make_ball_rule(std::size_t m, const BallQuadrature& q);

/// Default sample set shared by the DPP solver and the greedy game strategies:
/// 64 points for m = 1, 256 for m = 2.
BallRule solver_ball_rule(std::size_t m);

struct BallExtrema {
    double max;
    double min;
    Vec argmax;  // in absolute coordinates
    Vec argmin;
};

/// max/min of f over the closed ball B(center, radius), sampled at the rule
/// points and, when refine is set, improved by one golden-section pass around
/// the best sample along each local coordinate.
BallExtrema ball_extrema(const std::function<double(const Vec&)>& f, const Vec& center, double radius,
                         const BallRule& rule, bool refine);

/// Weighted average of f over B(center, radius).
double ball_average(const std::function<double(const Vec&)>& f, const Vec& center, double radius,
                    const BallRule& rule);

/// Golden-section search for the maximum of a unimodal function on [a, b].
/// Returns the abscissa.
double golden_section_max(const std::function<double(double)>& f, double a, double b, int iterations = 48);

}  // namespace kolmo

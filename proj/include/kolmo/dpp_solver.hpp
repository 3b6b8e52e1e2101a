#pragma once

#include <optional>
#include <string>

#include "kolmo/quadrature.hpp"
#include "kolmo/value_grid.hpp"

namespace kolmo {

struct SolveConfig {
    SpatialDomain domain = SpatialDomain::box(Vec{-1.0}, Vec{1.0});
    double T = 0.5;
    double p = 3.0;
    double eps = 0.1;
    double hX = 0.0125;
    double hY = 0.0125;
    /// 0 selects the default solver sample set (64 points for m = 1, 256 for m = 2).
    std::size_t ball_samples = 0;
    /// Y region of interest at the final time; the grid's Y box is grown from it.
    Vec y_seed_lo = Vec{-0.5};
    Vec y_seed_hi = Vec{0.5};
    std::size_t threads = 0;

    [[nodiscard]] std::size_t dim() const { return domain.dim(); }
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Sample set used by the solver for a given config.
BallRule solver_rule(const SolveConfig& config);

/// Grid geometry for a config: X nodes over the bounding box of U_X^eps, Y box
/// and per-slice Y windows, all nodes NaN.
ValueGrid make_grid(const SolveConfig& config);

/// Grid with F at every non-interior node of every slice (and all of slice 0),
/// and `fill` at interior nodes.
ValueGrid initialize(const SolveConfig& config, const BoundaryDatum& F, double fill);

/// One application of T: the values of slice `target` computed from slice
/// target-1, over target's window. Collar nodes receive F.
std::vector<double> apply_T(const ValueGrid& grid, std::size_t target, const BallRule& rule, std::size_t threads);

/// The tug/noise combination at one interior point (X, Y) of slice `target`.
double apply_T_at(const ValueGrid& grid, std::size_t target, const Vec& X, const Vec& Y, const BallRule& rule);

/// Backward-in-data sweep: each slice is one apply_T of its predecessor.
ValueGrid solve(const SolveConfig& config, const BoundaryDatum& F);

/// Jacobi sweep: every slice j >= 1 is replaced by apply_T of the previous
/// iterate's slice j-1.
void sweep(ValueGrid& grid, const BallRule& rule, std::size_t threads);

/// Max over interior window nodes of |apply_T(slice below) - stored value|.
double fixed_point_residual(const ValueGrid& grid, const BallRule& rule, std::size_t threads = 0);

struct GridNodeRef {
    std::size_t slice;
    std::size_t node;
    Vec X;
    Vec Y;
    double t;
    double a;
    double b;
};

struct CompareResult {
    bool dominates;
    std::optional<GridNodeRef> witness;
};

/// Dominates iff a >= b - tol at every active node; otherwise the first
/// offending node. Throws on geometry mismatch.
CompareResult compare(const ValueGrid& a, const ValueGrid& b, double tol = 1e-12);

/// Max |grid - exact| over active nodes with X in U_X at slice times in [t_lo, t_hi],
/// restricted to the box [lo, hi] in (X, Y) when given.
double max_node_error(const ValueGrid& grid, const std::function<double(const GroupPoint&)>& exact, double t_lo,
                      double t_hi, std::optional<std::pair<Vec, Vec>> x_box = std::nullopt,
                      std::optional<std::pair<Vec, Vec>> y_box = std::nullopt);

}  // namespace kolmo

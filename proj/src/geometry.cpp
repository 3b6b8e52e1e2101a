#include "kolmo/geometry.hpp"

#include <cmath>

namespace kolmo {

namespace {

void require_same_dim(const GroupPoint& a, const GroupPoint& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("group points have different dimensions: " + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()));
}

}  // namespace

GroupPoint::GroupPoint(Vec x, Vec y, double time) : X(x), Y(y), t(time) {
    if (X.size() != Y.size() || X.size() == 0)
        throw DimensionMismatch("GroupPoint: X and Y must share a dimension m >= 1");
}

GroupPoint compose(const GroupPoint& a, const GroupPoint& b) {
    require_same_dim(a, b);
    return {a.X + b.X, a.Y + b.Y - b.t * a.X, a.t + b.t};
}

GroupPoint inverse(const GroupPoint& g) { return {-g.X, -g.Y - g.t * g.X, -g.t}; }

GroupPoint dilate(double r, const GroupPoint& g) {
    if (!(r > 0.0)) throw std::invalid_argument("dilate: r must be positive");
    return {r * g.X, (r * r * r) * g.Y, r * r * g.t};
}

double quasi_norm(const GroupPoint& g) {
    return norm(g.X) + std::cbrt(norm(g.Y)) + std::sqrt(std::abs(g.t));
}

namespace {

/// b^{-1} o a = (X_a - X_b, Y_a - Y_b + (t_a - t_b) X_b, t_a - t_b), exactly zero when a = b.
GroupPoint relative(const GroupPoint& a, const GroupPoint& b) {
    const double dt = a.t - b.t;
    return {a.X - b.X, a.Y - b.Y + dt * b.X, dt};
}

}  // namespace

double d_K(const GroupPoint& a, const GroupPoint& b) {
    require_same_dim(a, b);
    return 0.5 * (quasi_norm(relative(a, b)) + quasi_norm(relative(b, a)));
}

double d_boundary(const GroupPoint& a, const GroupPoint& b) {
    require_same_dim(a, b);
    const double dt = b.t - a.t;
    return norm(a.X - b.X) + std::cbrt(norm(a.Y - b.Y - dt * b.X)) + std::sqrt(std::abs(dt));
}

double d_hat(const GroupPoint& a, const GroupPoint& b) {
    require_same_dim(a, b);
    return norm(a.X - b.X) + std::sqrt(norm(a.Y - b.Y)) + std::sqrt(std::abs(a.t - b.t));
}

}  // namespace kolmo

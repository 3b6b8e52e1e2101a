#pragma once

#include <stdexcept>
#include <string>

#include "kolmo/vec.hpp"

namespace kolmo {

/// Point (X, Y, t) of the homogeneous group R^m x R^m x R underlying the
/// Kolmogorov operator. X is velocity, Y position, t time.
struct GroupPoint {
    Vec X;
    Vec Y;
    double t = 0.0;

    GroupPoint() = default;
    GroupPoint(Vec x, Vec y, double time);

    [[nodiscard]] std::size_t dim() const { return X.size(); }
    static GroupPoint identity(std::size_t m) { return {Vec(m), Vec(m), 0.0}; }

    friend bool operator==(const GroupPoint& a, const GroupPoint& b) {
        return a.X == b.X && a.Y == b.Y && a.t == b.t;
    }
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Group law (a.X+b.X, a.Y+b.Y-b.t*a.X, a.t+b.t).
GroupPoint compose(const GroupPoint& a, const GroupPoint& b);

/// (-X, -Y-tX, -t)
GroupPoint inverse(const GroupPoint& g);

/// Anisotropic dilation (rX, r^3 Y, r^2 t). Throws for r <= 0.
GroupPoint dilate(double r, const GroupPoint& g);

/// |X| + |Y|^{1/3} + |t|^{1/2} with Euclidean vector norms; 1-homogeneous under dilate.
double quasi_norm(const GroupPoint& g);

/// Symmetrized group quasi-distance (||b^{-1} a|| + ||a^{-1} b||) / 2.
double d_K(const GroupPoint& a, const GroupPoint& b);

/// |X-X^| + |Y-Y^-(t^-t)X^|^{1/3} + |t^-t|^{1/2}. Not symmetric in its arguments.
double d_boundary(const GroupPoint& a, const GroupPoint& b);

/// |X-X~| + |Y-Y~|^{1/2} + |t-t~|^{1/2}; a genuine metric on R^{2m+1}.
double d_hat(const GroupPoint& a, const GroupPoint& b);

}  // namespace kolmo

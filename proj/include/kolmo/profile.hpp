#pragma once

#include <functional>
#include <string>

#include "kolmo/geometry.hpp"

namespace kolmo {

/// Value and the partial derivatives the operators need at one point.
struct Jet {
    double value = 0.0;
    Vec gradX;
    SymMat hessX;
    Vec gradY;
    double dt = 0.0;
};

enum class DerivativeMode { Analytic, FiniteDifference };

/// Scalar field on R^{2m+1} with first/second partials, either from closed-form
/// code or from central differences of the value function.
class SmoothProfile {
public:
    using ValueFn = std::function<double(const GroupPoint&)>;
    using JetFn = std::function<Jet(const GroupPoint&)>;

    static SmoothProfile analytic(std::string name, std::size_t m, ValueFn value, JetFn jet);
    /// Finite-difference profile with step h = fd_scale * (1 + |g|).
    static SmoothProfile finite_difference(std::string name, std::size_t m, ValueFn value, double fd_scale = 1e-4);

    /// Same value function, derivatives by central differences.
    [[nodiscard]] SmoothProfile with_finite_differences(double fd_scale = 1e-4) const;

    [[nodiscard]] double value(const GroupPoint& g) const { return value_(g); }
    [[nodiscard]] Jet jet(const GroupPoint& g) const;

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] std::size_t dim() const { return m_; }
    [[nodiscard]] DerivativeMode mode() const { return mode_; }
    [[nodiscard]] double fd_scale() const { return fd_scale_; }
    [[nodiscard]] const ValueFn& value_fn() const { return value_; }

private:
    SmoothProfile() = default;
    [[nodiscard]] Jet fd_jet(const GroupPoint& g) const;

    std::string name_;
    std::size_t m_ = 0;
    ValueFn value_;
    JetFn jet_;
    DerivativeMode mode_ = DerivativeMode::Analytic;
    double fd_scale_ = 1e-4;
};

/// g -> phi(g0 o g)
SmoothProfile left_translate(const SmoothProfile& phi, const GroupPoint& g0);
/// g -> phi(delta_r g)
SmoothProfile dilate_profile(const SmoothProfile& phi, double r);
/// g -> phi(g) + c
SmoothProfile add_constant(const SmoothProfile& phi, double c);
/// g -> phi(g) + c t
SmoothProfile add_time_drift(const SmoothProfile& phi, double c);

namespace profiles {

SmoothProfile constant(std::size_t m, double c);
/// a . X + b
SmoothProfile affine(Vec a, double b);
/// Y . e + t X . e, e a unit vector.
SmoothProfile y_plus_tx(Vec e);
/// |X|^2
SmoothProfile square_x(std::size_t m);
/// |X|^2 + 2(m+p-2)/(m+p) t  (p = inf gives coefficient 2)
SmoothProfile quadratic_p(std::size_t m, double p);
/// x_1^3
SmoothProfile cube_x(std::size_t m);
/// x_1^2 y_1 + t |X|^2 + sin(y_m) + x_1 t^2
SmoothProfile mixed(std::size_t m);
/// sin(a . X) exp(b . Y - t)
SmoothProfile trig_exp(std::size_t m);
/// y_1 alone
SmoothProfile coordinate_y(std::size_t m);

/// Looks up one of the names above ("const", "affine", "y_plus_tx", "x2",
/// "quadratic_p", "x3", "mixed", "trig_exp", "y"); p is used by quadratic_p.
SmoothProfile by_name(const std::string& name, std::size_t m, double p);

}  // namespace profiles

}  // namespace kolmo

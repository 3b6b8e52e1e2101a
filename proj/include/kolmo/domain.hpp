#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kolmo/geometry.hpp"
#include "kolmo/rng.hpp"

namespace kolmo {

struct BallShape {
    Vec center;
    double radius = 1.0;
};

struct BoxShape {
    Vec lo;
    Vec hi;
};

/// Spatial domain U_X (or U_Y) in R^m. Restricted to balls and axis-aligned
/// boxes, both of which have exact signed distances and normals.
class SpatialDomain {
public:
    static SpatialDomain ball(Vec center, double radius);
    static SpatialDomain box(Vec lo, Vec hi);

    [[nodiscard]] std::size_t dim() const;
    [[nodiscard]] bool is_ball() const { return std::holds_alternative<BallShape>(shape_); }
    [[nodiscard]] const BallShape& as_ball() const { return std::get<BallShape>(shape_); }
    [[nodiscard]] const BoxShape& as_box() const { return std::get<BoxShape>(shape_); }

    /// Negative inside, zero on the boundary, positive outside (Euclidean).
    [[nodiscard]] double signed_distance(const Vec& x) const;

    /// Outward unit normal. Exact on the boundary of a ball; for boxes the face
    /// with the largest penetration value wins, ties going to the lowest axis and
    /// then to the lower face.
    [[nodiscard]] Vec outward_normal(const Vec& x) const;

    [[nodiscard]] bool contains(const Vec& x) const { return signed_distance(x) < 0.0; }

    /// Axis-aligned bounding box of the set {x : signed_distance(x) <= pad}.
    [[nodiscard]] std::pair<Vec, Vec> bounding_box(double pad) const;

    /// max{1, max over the closure of |x|}.
    [[nodiscard]] double radius_bound() const;

    [[nodiscard]] std::string describe() const;

private:
    explicit SpatialDomain(std::variant<BallShape, BoxShape> s) : shape_(std::move(s)) {}
    std::variant<BallShape, BoxShape> shape_;
};

/// The epsilon-collar of U_X together with the extended time axis (-eps^2/2, T].
struct ParabolicCollar {
    SpatialDomain domain;
    double epsilon;
    double horizon;

    ParabolicCollar(SpatialDomain d, double eps, double T);

    /// X outside U_X with dist(X, boundary) <= eps.
    [[nodiscard]] bool in_lateral_band(const Vec& x) const;
    /// U_X union the lateral band.
    [[nodiscard]] bool in_extended_domain(const Vec& x) const;
    [[nodiscard]] double time_floor() const { return -0.5 * epsilon * epsilon; }
};

enum class ParabolicRegion { Interior, LateralCollar, InitialCollar, Outside };

ParabolicRegion classify_parabolic(const GroupPoint& point, const ParabolicCollar& collar);

std::string to_string(ParabolicRegion r);

/// Pieces of the closure of U_X x U_Y x [0,T]. Lateral, Outflow and Initial
/// form the Kolmogorov boundary; NoData is the characteristic part of the
/// Y-boundary where X . N_Y <= 0.
enum class KolmogorovRegion { Lateral, Outflow, Initial, NoData, Interior, Other };

KolmogorovRegion classify_kolmogorov(const GroupPoint& point, const SpatialDomain& ux,
                                     const SpatialDomain& uy, double T);

std::string to_string(KolmogorovRegion r);

/// Boundary/payoff function F on the parabolic collar.
struct BoundaryDatum {
    std::string name;
    std::function<double(const GroupPoint&)> evaluate;
    /// |F| <= bound on the collar, when F is bounded there.
    std::optional<double> bound;
    /// Declared Lipschitz constant with respect to d_boundary, when known.
    std::optional<double> lipschitz;

    double operator()(const GroupPoint& g) const { return evaluate(g); }

    /// F + c, keeping metadata consistent.
    [[nodiscard]] BoundaryDatum shifted(double c) const;
};

BoundaryDatum constant_datum(double c);
/// a . X + b
BoundaryDatum linear_datum(Vec a, double b = 0.0);
/// Y . e + t X . e for unit e (defaults to the first basis vector).
BoundaryDatum y_plus_tx_datum(std::size_t m, std::optional<Vec> e = std::nullopt);
/// |X|^2 + 2(m+p-2)/(m+p) t; p = infinity gives |X|^2 + 2t.
BoundaryDatum quadratic_p_datum(std::size_t m, double p, const SpatialDomain& ux, double T, double eps);

struct Sample {
    GroupPoint point;
    double value;
};

class LipschitzViolation : public std::invalid_argument {
public:
    LipschitzViolation(std::size_t i, std::size_t j, double ratio);
    std::size_t first;
    std::size_t second;
    double ratio;
};

/// McShane-Whitney extension with respect to d_hat, truncated to [-B, B] where
/// B = max |sample value|. Samples must satisfy v_j + L d_hat(s_k, s_j) >= v_k
/// for every ordered pair; otherwise LipschitzViolation names the pair.
BoundaryDatum mcshane_extend(std::vector<Sample> samples, double L);

/// Largest pairwise ratio |v_i - v_j| / d_hat(s_i, s_j) over a sample set,
/// rounded up so that mcshane_extend accepts it.
double sample_lipschitz_constant(const std::vector<Sample>& samples);

/// Random point of the collar Gamma_eps with Y drawn from [-y_extent, y_extent]^m.
GroupPoint sample_collar_point(const ParabolicCollar& collar, double y_extent, RandomStream& rng);

/// max over n random collar pairs of |F(a) - F(b)| / d_boundary(a, b).
double verify_g_eps_lipschitz(const BoundaryDatum& F, const ParabolicCollar& collar, std::size_t n,
                              std::uint64_t seed = 1, double y_extent = 1.0);

}  // namespace kolmo

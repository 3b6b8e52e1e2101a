#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kolmo/domain.hpp"

namespace kolmo {

struct TimeLadder {
    std::size_t N = 0;
    /// t_0 = t, t_k = t - k eps^2/2, t_N in (-eps^2/2, 0].
    std::vector<double> times;
};

/// N = ceil(t / (eps^2/2)). Throws std::out_of_range unless t > -eps^2/2.
TimeLadder time_ladder(double t, double eps);

class GridQueryOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct GridAxis {
    double lo = 0.0;
    double h = 1.0;
    std::size_t n = 1;

    [[nodiscard]] double coord(std::size_t i) const { return lo + h * static_cast<double>(i); }
    [[nodiscard]] double hi() const { return coord(n - 1); }
};

/// Inclusive Y-index box of the nodes holding values on one slice.
struct YWindow {
    std::array<std::size_t, kMaxDim> lo{};
    std::array<std::size_t, kMaxDim> hi{};
};

/// Values u(X, Y, t) on a tensor grid in (X, Y) for each slice of an
/// eps^2/2-spaced time ladder ending at T. Slice 0 is the unique slice with
/// t <= 0. Nodes outside a slice's Y window hold NaN.
class ValueGrid {
public:
    ValueGrid(std::size_t m, double p, double eps, double T, std::vector<GridAxis> x_axes,
              std::vector<GridAxis> y_axes);

    [[nodiscard]] std::size_t dim() const { return m_; }
    [[nodiscard]] double p() const { return p_; }
    [[nodiscard]] double eps() const { return eps_; }
    [[nodiscard]] double horizon() const { return T_; }
    [[nodiscard]] double hX() const { return x_axes_[0].h; }
    [[nodiscard]] double hY() const { return y_axes_[0].h; }
    [[nodiscard]] const GridAxis& x_axis(std::size_t i) const { return x_axes_[i]; }
    [[nodiscard]] const GridAxis& y_axis(std::size_t i) const { return y_axes_[i]; }

    [[nodiscard]] std::size_t n_slices() const { return slices_.size(); }
    [[nodiscard]] double slice_time(std::size_t j) const;
    /// Slice whose time equals t up to 1e-9 (1 + |t|); throws GridQueryOutOfRange otherwise.
    [[nodiscard]] std::size_t slice_index(double t) const;

    [[nodiscard]] std::size_t x_count() const { return nx_; }
    [[nodiscard]] std::size_t y_count() const { return ny_; }
    [[nodiscard]] std::size_t nodes_per_slice() const { return nx_ * ny_; }
    [[nodiscard]] std::size_t index(std::size_t ix, std::size_t iy) const { return ix * ny_ + iy; }
    [[nodiscard]] Vec node_X(std::size_t ix) const;
    [[nodiscard]] Vec node_Y(std::size_t iy) const;
    /// Per-axis Y indices of flat Y index iy.
    [[nodiscard]] std::array<std::size_t, kMaxDim> y_multi_index(std::size_t iy) const;

    std::vector<double>& slice(std::size_t j) { return slices_.at(j); }
    [[nodiscard]] const std::vector<double>& slice(std::size_t j) const { return slices_.at(j); }
    YWindow& window(std::size_t j) { return windows_.at(j); }
    [[nodiscard]] const YWindow& window(std::size_t j) const { return windows_.at(j); }
    [[nodiscard]] bool in_window(std::size_t j, std::size_t iy) const;
    /// Flat Y indices inside the window of slice j, in increasing order.
    [[nodiscard]] std::vector<std::size_t> window_indices(std::size_t j) const;

    /// Multilinear interpolation of slice j at (X, Y). Throws GridQueryOutOfRange
    /// outside the grid or when the stencil touches an inactive node.
    [[nodiscard]] double interpolate(std::size_t j, const Vec& X, const Vec& Y) const;

    /// Attaches the domain and boundary datum used for collar evaluation.
    void attach_boundary(SpatialDomain domain, BoundaryDatum F);
    [[nodiscard]] bool has_boundary() const { return domain_.has_value(); }
    [[nodiscard]] const SpatialDomain& domain() const { return *domain_; }
    [[nodiscard]] const BoundaryDatum& datum() const { return *datum_; }

    /// u at (X, Y, slice_time(j)): F when X is outside U_X or the slice time is
    /// <= 0 (boundary attached), interpolation otherwise.
    [[nodiscard]] double evaluate(std::size_t j, const Vec& X, const Vec& Y) const;

    [[nodiscard]] bool same_geometry(const ValueGrid& o) const;

    void write_csv(std::ostream& os) const;
    void write_binary(std::ostream& os) const;
    static ValueGrid read_binary(std::istream& is);

private:
    std::size_t m_;
    double p_;
    double eps_;
    double T_;
    double t_first_;
    std::vector<GridAxis> x_axes_;
    std::vector<GridAxis> y_axes_;
    std::size_t nx_ = 1;
    std::size_t ny_ = 1;
    /// Flat-index stride of each of the 2m coordinates (X axes, then Y axes).
    std::array<std::size_t, 2 * kMaxDim> stride_{};
    std::vector<std::vector<double>> slices_;
    std::vector<YWindow> windows_;
    std::optional<SpatialDomain> domain_;
    std::optional<BoundaryDatum> datum_;
};

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace kolmo

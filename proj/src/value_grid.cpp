#include "kolmo/value_grid.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "kolmo/operators.hpp"

namespace kolmo {

TimeLadder time_ladder(double t, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("time_ladder: eps must be positive");
    const double h = 0.5 * eps * eps;
    if (!(t > -h) || !std::isfinite(t)) throw std::out_of_range("time_ladder: t must lie in (-eps^2/2, T]");
    const double q = t / h;
    const double n = std::ceil(q - 1e-9 * std::max(1.0, std::abs(q)));
    TimeLadder out;
    out.N = n > 0.0 ? static_cast<std::size_t>(n) : 0;
    out.times.resize(out.N + 1);
    for (std::size_t k = 0; k <= out.N; ++k) out.times[k] = t - static_cast<double>(k) * h;
    double& last = out.times.back();
    if (std::abs(last) <= 1e-12 * std::max(1.0, std::abs(t))) last = 0.0;
    if (last > 0.0) last = 0.0;
    return out;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return {buf, res.ptr};
}

ValueGrid::ValueGrid(std::size_t m, double p, double eps, double T, std::vector<GridAxis> x_axes,
                     std::vector<GridAxis> y_axes)
    : m_(m), p_(p), eps_(eps), T_(T), x_axes_(std::move(x_axes)), y_axes_(std::move(y_axes)) {
    if (m == 0 || m > kMaxDim) throw std::invalid_argument("ValueGrid: unsupported dimension");
    if (x_axes_.size() != m || y_axes_.size() != m) throw DimensionMismatch("ValueGrid: axis count differs from m");
    for (const auto* axes : {&x_axes_, &y_axes_})
        for (const GridAxis& a : *axes)
            if (a.n == 0 || !(a.h > 0.0)) throw std::invalid_argument("ValueGrid: empty axis or bad spacing");
    for (std::size_t i = 0; i < m; ++i) {
        nx_ *= x_axes_[i].n;
        ny_ *= y_axes_[i].n;
    }
    std::size_t sx = ny_, sy = 1;
    for (std::size_t a = m; a-- > 0;) {
        stride_[a] = sx;
        sx *= x_axes_[a].n;
        stride_[m + a] = sy;
        sy *= y_axes_[a].n;
    }
    const TimeLadder ladder = time_ladder(T, eps);
    t_first_ = ladder.times.back();
    slices_.assign(ladder.N + 1, std::vector<double>(nx_ * ny_, std::numeric_limits<double>::quiet_NaN()));
    YWindow full;
    for (std::size_t i = 0; i < m; ++i) full.hi[i] = y_axes_[i].n - 1;
    windows_.assign(ladder.N + 1, full);
}

double ValueGrid::slice_time(std::size_t j) const {
    if (j >= slices_.size()) throw std::out_of_range("slice index out of range");
    if (j == 0) return t_first_;
    return T_ - static_cast<double>(slices_.size() - 1 - j) * 0.5 * eps_ * eps_;
}

std::size_t ValueGrid::slice_index(double t) const {
    const double h = 0.5 * eps_ * eps_;
    const double q = (t - t_first_) / h;
    const double r = std::round(q);
    if (r >= 0.0 && r < static_cast<double>(slices_.size())) {
        const auto j = static_cast<std::size_t>(r);
        if (std::abs(slice_time(j) - t) <= 1e-9 * (1.0 + std::abs(t))) return j;
    }
    throw GridQueryOutOfRange("time " + format_double(t) + " is not on the grid's time ladder");
}

Vec ValueGrid::node_X(std::size_t ix) const {
    Vec x(m_);
    for (std::size_t a = m_; a-- > 0;) {
        x[a] = x_axes_[a].coord(ix % x_axes_[a].n);
        ix /= x_axes_[a].n;
    }
    return x;
}

Vec ValueGrid::node_Y(std::size_t iy) const {
    Vec y(m_);
    for (std::size_t a = m_; a-- > 0;) {
        y[a] = y_axes_[a].coord(iy % y_axes_[a].n);
        iy /= y_axes_[a].n;
    }
    return y;
}

std::array<std::size_t, kMaxDim> ValueGrid::y_multi_index(std::size_t iy) const {
    std::array<std::size_t, kMaxDim> out{};
    for (std::size_t a = m_; a-- > 0;) {
        out[a] = iy % y_axes_[a].n;
        iy /= y_axes_[a].n;
    }
    return out;
}

bool ValueGrid::in_window(std::size_t j, std::size_t iy) const {
    const auto idx = y_multi_index(iy);
    const YWindow& w = windows_.at(j);
    for (std::size_t a = 0; a < m_; ++a)
        if (idx[a] < w.lo[a] || idx[a] > w.hi[a]) return false;
    return true;
}

std::vector<std::size_t> ValueGrid::window_indices(std::size_t j) const {
    std::vector<std::size_t> out;
    const YWindow& w = windows_.at(j);
    std::size_t count = 1;
    for (std::size_t a = 0; a < m_; ++a) {
        if (w.hi[a] < w.lo[a]) return out;
        count *= w.hi[a] - w.lo[a] + 1;
    }
    out.reserve(count);
    std::array<std::size_t, kMaxDim> cur = w.lo;
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t flat = 0;
        for (std::size_t a = 0; a < m_; ++a) flat = flat * y_axes_[a].n + cur[a];
        out.push_back(flat);
        for (std::size_t a = m_; a-- > 0;) {
            if (cur[a] < w.hi[a]) {
                ++cur[a];
                break;
            }
            cur[a] = w.lo[a];
        }
    }
    return out;
}

namespace {

struct AxisLocation {
    std::size_t base;
    double frac;
};

inline bool locate(const GridAxis& a, double x, AxisLocation& out) {
    const double s = (x - a.lo) / a.h;
    const double top = static_cast<double>(a.n - 1);
    if (!(s >= -1e-9) || !(s <= top + 1e-9)) return false;
    if (a.n == 1) {
        out = {0, 0.0};
        return true;
    }
    double cell = std::floor(s);
    if (cell < 0.0) cell = 0.0;
    if (cell > top - 1.0) cell = top - 1.0;
    double f = s - cell;
    if (f < 0.0) f = 0.0;
    if (f > 1.0) f = 1.0;
    out = {static_cast<std::size_t>(cell), f};
    return true;
}

std::string describe_query(std::size_t j, const Vec& X, const Vec& Y) {
    std::ostringstream os;
    os << "slice " << j << ", X=(";
    for (std::size_t i = 0; i < X.size(); ++i) os << (i ? "," : "") << X[i];
    os << "), Y=(";
    for (std::size_t i = 0; i < Y.size(); ++i) os << (i ? "," : "") << Y[i];
    os << ")";
    return os.str();
}

}  // namespace

double ValueGrid::interpolate(std::size_t j, const Vec& X, const Vec& Y) const {
    const std::vector<double>& v = slices_.at(j);
    const std::size_t d = 2 * m_;
    std::array<double, 2 * kMaxDim> frac{};
    std::size_t base = 0;
    for (std::size_t a = 0; a < d; ++a) {
        const bool is_x = a < m_;
        const GridAxis& ax = is_x ? x_axes_[a] : y_axes_[a - m_];
        AxisLocation loc{};
        if (!locate(ax, is_x ? X[a] : Y[a - m_], loc))
            throw GridQueryOutOfRange(std::string(is_x ? "X outside the value grid" : "Y outside Y_box") + " at " +
                                      describe_query(j, X, Y));
        base += loc.base * stride_[a];
        frac[a] = loc.frac;
    }
    double acc = 0.0;
    for (std::size_t corner = 0; corner < (std::size_t{1} << d); ++corner) {
        double w = 1.0;
        std::size_t idx = base;
        for (std::size_t a = 0; a < d; ++a) {
            if ((corner >> a) & 1U) {
                w *= frac[a];
                idx += stride_[a];
            } else {
                w *= 1.0 - frac[a];
            }
        }
        if (w == 0.0) continue;
        const double val = v[idx];
        if (std::isnan(val))
            throw GridQueryOutOfRange("interpolation stencil leaves the active Y window at " +
                                      describe_query(j, X, Y));
        acc += w * val;
    }
    return acc;
}

void ValueGrid::attach_boundary(SpatialDomain domain, BoundaryDatum F) {
    if (domain.dim() != m_) throw DimensionMismatch("attach_boundary: domain dimension differs from grid");
    domain_ = std::move(domain);
    datum_ = std::move(F);
}

double ValueGrid::evaluate(std::size_t j, const Vec& X, const Vec& Y) const {
    const double t = slice_time(j);
    if (domain_ && (t <= 0.0 || !domain_->contains(X))) return (*datum_)(GroupPoint(X, Y, t));
    return interpolate(j, X, Y);
}

bool ValueGrid::same_geometry(const ValueGrid& o) const {
    if (m_ != o.m_ || eps_ != o.eps_ || T_ != o.T_ || slices_.size() != o.slices_.size()) return false;
    for (std::size_t a = 0; a < m_; ++a) {
        const GridAxis &x = x_axes_[a], &ox = o.x_axes_[a], &y = y_axes_[a], &oy = o.y_axes_[a];
        if (x.lo != ox.lo || x.h != ox.h || x.n != ox.n || y.lo != oy.lo || y.h != oy.h || y.n != oy.n)
            return false;
    }
    return true;
}

void ValueGrid::write_csv(std::ostream& os) const {
    os << "t";
    for (std::size_t a = 0; a < m_; ++a) os << ",x" << a + 1;
    for (std::size_t a = 0; a < m_; ++a) os << ",y" << a + 1;
    os << ",value\n";
    for (std::size_t j = 0; j < slices_.size(); ++j) {
        const std::string t = format_double(slice_time(j));
        const auto ys = window_indices(j);
        for (std::size_t ix = 0; ix < nx_; ++ix) {
            const Vec X = node_X(ix);
            for (std::size_t iy : ys) {
                const Vec Y = node_Y(iy);
                os << t;
                for (double x : X) os << ',' << format_double(x);
                for (double y : Y) os << ',' << format_double(y);
                os << ',' << format_double(slices_[j][index(ix, iy)]) << '\n';
            }
        }
    }
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary grid IO assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw std::runtime_error("truncated grid file");
    return v;
}

}  // namespace

void ValueGrid::write_binary(std::ostream& os) const {
    put<std::uint64_t>(os, m_);
    put<double>(os, is_infinite_p(p_) ? -1.0 : p_);
    put<double>(os, eps_);
    put<double>(os, hX());
    put<double>(os, hY());
    for (const GridAxis& a : x_axes_) {
        put<double>(os, a.lo);
        put<std::uint64_t>(os, a.n);
    }
    for (const GridAxis& a : y_axes_) {
        put<double>(os, a.lo);
        put<std::uint64_t>(os, a.n);
    }
    put<double>(os, t_first_);
    put<double>(os, T_);
    put<std::uint64_t>(os, slices_.size());
    for (const auto& s : slices_) os.write(reinterpret_cast<const char*>(s.data()), std::streamsize(s.size() * 8));
}

ValueGrid ValueGrid::read_binary(std::istream& is) {
    const auto m = get<std::uint64_t>(is);
    if (m == 0 || m > kMaxDim) throw std::runtime_error("grid file: bad dimension");
    double p = get<double>(is);
    if (p == -1.0) p = kInfP;
    const double eps = get<double>(is), hx = get<double>(is), hy = get<double>(is);
    std::vector<GridAxis> xa(m), ya(m);
    for (auto& a : xa) a = {get<double>(is), hx, get<std::uint64_t>(is)};
    for (auto& a : ya) a = {get<double>(is), hy, get<std::uint64_t>(is)};
    get<double>(is);  // t_first, recomputed from T
    const double T = get<double>(is);
    const auto n_slices = get<std::uint64_t>(is);
    ValueGrid g(m, p, eps, T, xa, ya);
    if (n_slices != g.n_slices()) throw std::runtime_error("grid file: slice count inconsistent with T and eps");
    for (std::size_t j = 0; j < n_slices; ++j) {
        auto& s = g.slices_[j];
        if (!is.read(reinterpret_cast<char*>(s.data()), std::streamsize(s.size() * 8)))
            throw std::runtime_error("truncated grid file");
        YWindow w;
        for (std::size_t a = 0; a < m; ++a) {
            w.lo[a] = ya[a].n;
            w.hi[a] = 0;
        }
        for (std::size_t ix = 0; ix < g.nx_; ++ix)
            for (std::size_t iy = 0; iy < g.ny_; ++iy) {
                if (std::isnan(s[g.index(ix, iy)])) continue;
                const auto idx = g.y_multi_index(iy);
                for (std::size_t a = 0; a < m; ++a) {
                    w.lo[a] = std::min(w.lo[a], idx[a]);
                    w.hi[a] = std::max(w.hi[a], idx[a]);
                }
            }
        g.windows_[j] = w;
    }
    return g;
}

}  // namespace kolmo

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace kolmo {

/// Largest velocity/position dimension m supported by the fixed-capacity vectors.
inline constexpr std::size_t kMaxDim = 4;

/// Small fixed-capacity vector in R^m, m <= kMaxDim. No heap allocation, so it
/// can be used freely inside the solver and game inner loops.
class Vec {
public:
    Vec() = default;

    explicit Vec(std::size_t m, double fill = 0.0) : size_(m) {
        if (m > kMaxDim) throw std::invalid_argument("Vec: dimension exceeds kMaxDim");
        data_.fill(0.0);
        for (std::size_t i = 0; i < m; ++i) data_[i] = fill;
    }

    Vec(std::initializer_list<double> values) : size_(values.size()) {
        if (size_ > kMaxDim) throw std::invalid_argument("Vec: dimension exceeds kMaxDim");
        data_.fill(0.0);
        std::copy(values.begin(), values.end(), data_.begin());
    }

    [[nodiscard]] std::size_t size() const { return size_; }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }
    double* begin() { return data_.data(); }
    double* end() { return data_.data() + size_; }
    [[nodiscard]] const double* begin() const { return data_.data(); }
    [[nodiscard]] const double* end() const { return data_.data() + size_; }

    Vec& operator+=(const Vec& o) {
        for (std::size_t i = 0; i < size_; ++i) data_[i] += o.data_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (std::size_t i = 0; i < size_; ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (std::size_t i = 0; i < size_; ++i) data_[i] *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator-(Vec a) { return a *= -1.0; }

    friend bool operator==(const Vec& a, const Vec& b) {
        if (a.size_ != b.size_) return false;
        for (std::size_t i = 0; i < a.size_; ++i)
            if (a.data_[i] != b.data_[i]) return false;
        return true;
    }

private:
    std::array<double, kMaxDim> data_{};
    std::size_t size_ = 0;
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline bool all_finite(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

/// Symmetric m x m matrix stored densely, m <= kMaxDim.
class SymMat {
public:
    SymMat() = default;
    explicit SymMat(std::size_t m) : size_(m) {
        if (m > kMaxDim) throw std::invalid_argument("SymMat: dimension exceeds kMaxDim");
    }

    [[nodiscard]] std::size_t size() const { return size_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * kMaxDim + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * kMaxDim + j]; }

    [[nodiscard]] double trace() const {
        double s = 0.0;
        for (std::size_t i = 0; i < size_; ++i) s += (*this)(i, i);
        return s;
    }

    [[nodiscard]] double frobenius() const {
        double s = 0.0;
        for (std::size_t i = 0; i < size_; ++i)
            for (std::size_t j = 0; j < size_; ++j) s += (*this)(i, j) * (*this)(i, j);
        return std::sqrt(s);
    }

    /// <A v, v>
    [[nodiscard]] double quadratic(const Vec& v) const {
        double s = 0.0;
        for (std::size_t i = 0; i < size_; ++i)
            for (std::size_t j = 0; j < size_; ++j) s += (*this)(i, j) * v[i] * v[j];
        return s;
    }

    SymMat& operator*=(double s) {
        for (double& v : data_) v *= s;
        return *this;
    }

private:
    std::array<double, kMaxDim * kMaxDim> data_{};
    std::size_t size_ = 0;
};

}  // namespace kolmo

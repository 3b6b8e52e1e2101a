#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kolmo/profile.hpp"

namespace kolmo {

inline constexpr double kInfP = std::numeric_limits<double>::infinity();

inline bool is_infinite_p(double p) { return std::isinf(p) && p > 0.0; }

/// Coin probabilities of the tug-of-war with noise: alpha=(p-2)/(m+p),
/// beta=(m+2)/(m+p); alpha=1, beta=0 for p=inf. alpha+beta=1 for every p.
struct TugWeights {
    double alpha;
    double beta;
};

TugWeights tug_weights(double p, std::size_t m);

class DegenerateGradient : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// 1e-10 (1 + |H|_F): below this |grad_X| the normalized infinity Laplacian is undefined.
double gradient_floor(const Jet& j);

/// <H v, v> with v the unit X-gradient; 0 when H = 0. Otherwise throws
/// DegenerateGradient below the gradient floor.
double inf_laplacian_normalized(const Jet& j);
double inf_laplacian_normalized(const SmoothProfile& phi, const GroupPoint& g);

/// Delta_X phi + X . grad_Y phi - d_t phi
double apply_K(const SmoothProfile& phi, const GroupPoint& g);

/// ((p-2) Delta_inf^N + Delta_X) phi + (m+p)(X . grad_Y phi - d_t phi) for p < inf,
/// Delta_inf^N phi + X . grad_Y phi - d_t phi for p = inf. The normalized
/// infinity Laplacian is skipped (not evaluated) when p = 2.
double apply_Kp(const SmoothProfile& phi, const GroupPoint& g, double p);
double apply_Kp(const Jet& j, const GroupPoint& g, double p);

enum class ViscositySide { Super, Sub };

struct ViscosityResult {
    bool satisfied;
    /// Signed slack of the inequality; >= 0 when it holds.
    double margin;
};

/// Pointwise test of the super/subsolution inequalities for a test function
/// touching at g. The touching geometry itself is the caller's business.
ViscosityResult viscosity_check(const SmoothProfile& phi, const GroupPoint& g, double p, ViscositySide side,
                                double tolerance = 1e-9);

/// Smallest / largest eigenvalue of a symmetric matrix.
double min_eigenvalue(const SymMat& a);
double max_eigenvalue(const SymMat& a);

struct ExactSolution {
    SmoothProfile profile;
    /// nullopt: solves K_p u = 0 for every p in (1, inf].
    std::optional<double> valid_p;
    std::string description;
    /// True when the classical equation is only checked away from grad_X u = 0.
    bool excludes_zero_gradient;
};

/// Exact solutions of K_p u = 0 in dimension m. quadratic_p is listed for each
/// p in ps.
std::vector<ExactSolution> catalog(std::size_t m, const std::vector<double>& ps = {2.0, 3.0, 4.0, 10.0, kInfP});

std::string format_p(double p);

}  // namespace kolmo

#include "kolmo/operators.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace kolmo {

TugWeights tug_weights(double p, std::size_t m) {
    if (is_infinite_p(p)) return {1.0, 0.0};
    if (!(p > 1.0)) throw std::invalid_argument("p must lie in (1, inf]");
    const double md = static_cast<double>(m);
    return {(p - 2.0) / (md + p), (md + 2.0) / (md + p)};
}

double gradient_floor(const Jet& j) { return 1e-10 * (1.0 + j.hessX.frobenius()); }

double inf_laplacian_normalized(const Jet& j) {
    const double g = norm(j.gradX);
    // <H v, v> = 0 for every direction v when H = 0.
    if (g <= gradient_floor(j) && j.hessX.frobenius() == 0.0) return 0.0;
    if (g <= gradient_floor(j)) throw DegenerateGradient("normalized infinity Laplacian: |grad_X phi| below floor");
    return j.hessX.quadratic(j.gradX * (1.0 / g));
}

double inf_laplacian_normalized(const SmoothProfile& phi, const GroupPoint& g) {
    return inf_laplacian_normalized(phi.jet(g));
}

double apply_K(const SmoothProfile& phi, const GroupPoint& g) {
    const Jet j = phi.jet(g);
    return j.hessX.trace() + dot(g.X, j.gradY) - j.dt;
}

double apply_Kp(const Jet& j, const GroupPoint& g, double p) {
    const double drift = dot(g.X, j.gradY) - j.dt;
    if (is_infinite_p(p)) return inf_laplacian_normalized(j) + drift;
    if (!(p > 1.0)) throw std::invalid_argument("apply_Kp: p must lie in (1, inf]");
    const double md = static_cast<double>(g.dim());
    const double elliptic = p == 2.0 ? j.hessX.trace() : (p - 2.0) * inf_laplacian_normalized(j) + j.hessX.trace();
    return elliptic + (md + p) * drift;
}

double apply_Kp(const SmoothProfile& phi, const GroupPoint& g, double p) { return apply_Kp(phi.jet(g), g, p); }

namespace {

Eigen::MatrixXd to_eigen(const SymMat& a) {
    const auto m = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd out(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index k = 0; k < m; ++k) out(i, k) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
    return out;
}

}  // namespace

double min_eigenvalue(const SymMat& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const SymMat& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

ViscosityResult viscosity_check(const SmoothProfile& phi, const GroupPoint& g, double p, ViscositySide side,
                                double tolerance) {
    const Jet j = phi.jet(g);
    const bool inf = is_infinite_p(p);
    const double md = static_cast<double>(g.dim());
    // Time/transport side: c (d_t phi - X . grad_Y phi).
    const double transport = (inf ? 1.0 : md + p) * (j.dt - dot(g.X, j.gradY));

    double elliptic = 0.0;
    if (norm(j.gradX) > gradient_floor(j)) {
        const double dinf = inf_laplacian_normalized(j);
        elliptic = inf ? dinf : (p - 2.0) * dinf + j.hessX.trace();
    } else {
        SymMat weighted = j.hessX;
        if (!inf) weighted *= (p - 2.0);
        const double eig = side == ViscositySide::Super ? min_eigenvalue(weighted) : max_eigenvalue(weighted);
        elliptic = inf ? eig : eig + j.hessX.trace();
    }
    const double margin = side == ViscositySide::Super ? transport - elliptic : elliptic - transport;
    return {margin >= -tolerance, margin};
}

std::vector<ExactSolution> catalog(std::size_t m, const std::vector<double>& ps) {
    std::vector<ExactSolution> out;
    Vec a(m), e(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = 0.5 + 0.25 * static_cast<double>(i);
    e[0] = 1.0;
    out.push_back({profiles::constant(m, 1.5), std::nullopt, "constant 1.5", false});
    out.push_back({profiles::affine(a, -0.25), std::nullopt, "affine a.X + b", false});
    out.push_back({profiles::y_plus_tx(e), std::nullopt, "y_plus_tx: Y.e + t X.e", true});
    if (m >= 2) {
        Vec d(m);
        for (std::size_t i = 0; i < m; ++i) d[i] = 1.0 / std::sqrt(static_cast<double>(m));
        out.push_back({profiles::y_plus_tx(d), std::nullopt, "y_plus_tx along the diagonal", true});
    }
    for (double p : ps) {
        out.push_back({profiles::quadratic_p(m, p), p, "quadratic_p(p=" + format_p(p) + ",m=" + std::to_string(m) + ")",
                       true});
    }
    return out;
}

std::string format_p(double p) {
    if (is_infinite_p(p)) return "inf";
    std::ostringstream os;
    os << p;
    return os.str();
}

}  // namespace kolmo

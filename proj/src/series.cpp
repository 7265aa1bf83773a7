#include "freejac/series.hpp"

#include <Eigen/Dense>

#include "freejac/error.hpp"

namespace freejac {

namespace {

/// The N x N matrix of degree-one coefficients: entry (i, j) is the
/// coefficient of X_j in component i.
Eigen::MatrixXcd linear_coefficients(const FreePolyMap& p) {
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(p.num_outputs(), p.num_vars);
    for (int i = 0; i < p.num_outputs(); ++i) {
        for (int j = 0; j < p.num_vars; ++j) {
            l(i, j) = p.components[i].coeff(Word{static_cast<std::uint32_t>(j)});
        }
    }
    return l;
}

/// Applies a constant matrix to a tuple of polynomials componentwise.
std::vector<FreePoly> apply_matrix(const Eigen::MatrixXcd& m,
                                   const std::vector<FreePoly>& polys, int num_vars) {
    std::vector<FreePoly> out(m.rows(), FreePoly::zero(num_vars));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) != std::complex<double>(0.0)) out[i] += m(i, j) * polys[j];
        }
    }
    return out;
}

}  // namespace

SeriesMap series_inverse(const FreePolyMap& p, int degree) {
    if (degree < 1) {
        throw Error(ErrorCode::invalid_argument, "series inversion needs degree >= 1");
    }
    if (p.num_outputs() != p.num_vars) {
        throw Error(ErrorCode::arity_mismatch,
                    "series inversion needs as many components as variables");
    }
    if (p.has_constant_term()) {
        throw Error(ErrorCode::constant_term,
                    "series inversion needs components without constant terms");
    }
    const int n = p.num_vars;
    const Eigen::MatrixXcd l = linear_coefficients(p);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(l, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()(n - 1);
    const double smax = svd.singularValues()(0);
    if (smin == 0.0 || smax / smin >= kSeriesLinearCondLimit) {
        throw Error(ErrorCode::singular_linear_part,
                    "the linear part is singular or too ill-conditioned to invert",
                    nlohmann::json{{"sigma_min", smin}, {"sigma_max", smax}});
    }
    const Eigen::MatrixXcd linv = l.inverse();

    // higher-order part of P
    std::vector<FreePoly> higher;
    higher.reserve(n);
    for (int i = 0; i < n; ++i) {
        FreePoly h(n);
        for (const auto& [w, c] : p.components[i].terms()) {
            if (w.length() >= 2) h.add_term(w, c);
        }
        higher.push_back(std::move(h));
    }

    const FreePolyMap id = identity_map(n);
    // Q_0 = L^{-1} Y, exact through degree 1
    FreePolyMap q(n, apply_matrix(linv, id.components, n));
    for (int pass = 0; pass < degree; ++pass) {
        std::vector<FreePoly> r;
        r.reserve(n);
        for (int i = 0; i < n; ++i) {
            FreePoly hi = compose(higher[i], q.components, degree);
            r.push_back(id.components[i] - hi);
        }
        q = FreePolyMap(n, apply_matrix(linv, r, n));
    }

    SeriesMap out{std::move(q), degree, false};
    out.valid = approx_equal(compose(p, out.map, degree), identity_map(n));
    return out;
}

}  // namespace freejac

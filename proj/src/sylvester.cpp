#include "freejac/sylvester.hpp"

#include <limits>
#include <unsupported/Eigen/KroneckerProduct>

#include "freejac/error.hpp"

namespace freejac {

namespace {

void require_square(const Eigen::MatrixXcd& m, const char* name) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw Error(ErrorCode::shape_mismatch, std::string(name) + " must be square");
    }
}

}  // namespace

nlohmann::json SylvesterUniqueness::to_json() const {
    return nlohmann::json{{"unique", unique},
                          {"margin", margin},
                          {"tolerance", tolerance},
                          {"lambda", {lambda.real(), lambda.imag()}},
                          {"mu", {mu.real(), mu.imag()}}};
}

SylvesterUniqueness sylvester_unique(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    require_square(a, "A");
    require_square(b, "B");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ea(a, false);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eb(b, false);
    SylvesterUniqueness out;
    out.margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ea.eigenvalues().size(); ++i) {
        for (int j = 0; j < eb.eigenvalues().size(); ++j) {
            const double d = std::abs(ea.eigenvalues()(i) + eb.eigenvalues()(j));
            if (d < out.margin) {
                out.margin = d;
                out.lambda = ea.eigenvalues()(i);
                out.mu = eb.eigenvalues()(j);
            }
        }
    }
    out.tolerance = kSylvesterTol * (a.norm() + b.norm());
    out.unique = out.margin > out.tolerance;
    return out;
}

Eigen::MatrixXcd sylvester_solve(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                 const Eigen::MatrixXcd& c) {
    require_square(a, "A");
    require_square(b, "B");
    const auto p = a.rows();
    const auto q = b.rows();
    if (c.rows() != p || c.cols() != q) {
        throw Error(ErrorCode::shape_mismatch, "C must be A.rows() x B.rows()");
    }
    SylvesterUniqueness uniq = sylvester_unique(a, b);
    if (!uniq.unique) {
        throw Error(ErrorCode::near_singular_pencil,
                    "spectra of A and -B are not separated; the equation is singular or "
                    "near-singular",
                    uniq.to_json());
    }
    Eigen::MatrixXcd system =
        Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(q, q), a) +
        Eigen::kroneckerProduct(b.transpose(), Eigen::MatrixXcd::Identity(p, p));
    Eigen::Map<const Eigen::VectorXcd> rhs(c.data(), p * q);
    Eigen::VectorXcd sol = Eigen::PartialPivLU<Eigen::MatrixXcd>(system).solve(rhs);
    Eigen::MatrixXcd h = Eigen::Map<const Eigen::MatrixXcd>(sol.data(), p, q);

    const double residual = (a * h + h * b - c).norm();
    const double bound = 1e-9 * (a.norm() + b.norm()) * h.norm() + 1e-12;
    if (residual > bound) {
        throw Error(ErrorCode::near_singular_pencil,
                    "solve residual exceeds the contract bound",
                    nlohmann::json{{"residual", residual}, {"bound", bound}});
    }
    return h;
}

}  // namespace freejac

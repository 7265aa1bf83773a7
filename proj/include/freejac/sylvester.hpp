#pragma once

#include <complex>

#include <json.hpp>

#include <Eigen/Dense>

namespace freejac {

/// AH + HB = C has a unique solution iff no eigenvalue of A is the negative
/// of an eigenvalue of B; the margin quantifies the distance to failure.
inline constexpr double kSylvesterTol = 1e-8;

struct SylvesterUniqueness {
    bool unique = false;
    double margin = 0.0;     ///< min over pairs of |lambda_i(A) + mu_j(B)|
    double tolerance = 0.0;  ///< kSylvesterTol * (|A| + |B|), Frobenius
    std::complex<double> lambda;  ///< the offending (or tightest) pair
    std::complex<double> mu;

    nlohmann::json to_json() const;
};

SylvesterUniqueness sylvester_unique(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Solves AH + HB = C through the Kronecker system
/// (I (x) A + B^T (x) I) vec(H) = vec(C). Throws near_singular_pencil with
/// the offending eigenvalue pair when the margin is inside tolerance, and
/// checks the residual |AH + HB - C| <= 1e-9 (|A|+|B|) |H| + 1e-12.
Eigen::MatrixXcd sylvester_solve(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                 const Eigen::MatrixXcd& c);

}  // namespace freejac

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "freejac/eval.hpp"

namespace freejac {

/// Singular verdicts fire when sigma_min <= kSingularityTol * max(1, sigma_max).
inline constexpr double kSingularityTol = 1e-8;

/// The derivative of P at X as one dense matrix acting on column-stacked
/// direction tuples: rows = num_outputs * n^2, cols = num_vars * n^2.
/// Built from the Leibniz terms: a word position with prefix L, letter j and
/// suffix R contributes coeff * (R^T (x) L) to block column j. The contract
/// mat * vec(H) = vec(jet derivative) fixes every convention.
struct DerivativeMatrix {
    Eigen::MatrixXcd mat;
    int n = 0;
    int num_vars = 0;
    int num_outputs = 0;
    std::string map_digest;
    std::string point_digest;

    /// Column-stacks a direction tuple, variable blocks in order.
    Eigen::VectorXcd vectorize(const MatrixTuple& h) const;
    /// Inverse of vectorize.
    MatrixTuple unvectorize(const Eigen::VectorXcd& v) const;

    nlohmann::json to_json() const;
};

DerivativeMatrix derivative_matrix(const FreePolyMap& p, const MatrixTuple& x);

struct SingularityCertificate {
    enum class Verdict { nonsingular, singular };

    Verdict verdict = Verdict::nonsingular;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double threshold = 0.0;  ///< kSingularityTol * max(1, sigma_max)
    std::optional<MatrixTuple> kernel;  ///< unit-norm, present iff singular

    bool singular() const noexcept { return verdict == Verdict::singular; }

    nlohmann::json to_json() const;
};

/// Full SVD at desk scale. The kernel vector is the right singular vector of
/// the smallest singular value, phase-normalized so its largest entry is
/// real positive, reshaped into a direction tuple.
SingularityCertificate singularity_certificate(const DerivativeMatrix& m);

}  // namespace freejac

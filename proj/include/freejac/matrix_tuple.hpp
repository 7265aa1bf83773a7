#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <vector>

namespace freejac {

/// A tuple of N dense complex matrices of common square size n.
struct MatrixTuple {
    std::vector<Eigen::MatrixXcd> mats;

    MatrixTuple() = default;
    explicit MatrixTuple(std::vector<Eigen::MatrixXcd> ms);

    int size() const noexcept { return mats.empty() ? 0 : static_cast<int>(mats.front().rows()); }
    int count() const noexcept { return static_cast<int>(mats.size()); }

    static MatrixTuple zero(int count, int n);

    /// Frobenius norm over the whole tuple.
    double norm() const noexcept;

    friend MatrixTuple operator-(const MatrixTuple& a, const MatrixTuple& b);

    /// {"n": int, "matrices": [[[re, im], ...], ...]} — each matrix a flat
    /// row-major list of n^2 [re, im] pairs. Decimal output round-trips
    /// doubles exactly.
    nlohmann::json to_json() const;
    static MatrixTuple from_json(const nlohmann::json& j);
};

/// Operator 2-norm (largest singular value).
double op_norm(const Eigen::MatrixXcd& m);

/// Componentwise block-diagonal stacking; sizes add, counts must match.
MatrixTuple direct_sum(const MatrixTuple& a, const MatrixTuple& b);

/// Componentwise conjugation S^{-1} A_i S. Rejects S when its condition
/// estimate exceeds 1e12.
MatrixTuple similarity(const MatrixTuple& a, const Eigen::MatrixXcd& s);

inline constexpr double kSimilarityCondLimit = 1e12;

}  // namespace freejac

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freejac/matrix_tuple.hpp"

namespace freejac {

/// One constraint on a matrix tuple. Norms are operator 2-norms.
struct DomainConstraint {
    enum class Kind { norm_bound, weighted_norm_sum, spectral_halfplane };

    Kind kind = Kind::norm_bound;
    int var = 0;                   ///< norm_bound / spectral_halfplane target
    double bound = 1.0;            ///< strict upper bound for the norm kinds
    std::vector<double> weights;   ///< weighted_norm_sum only, one per variable
    double rotation = 0.0;         ///< half-plane Re(e^{-i rot} spec) > 0

    bool satisfied(const MatrixTuple& x) const;
};

/// A conjunction of constraints. Per-variable norm balls and spectral
/// half-planes are closed under direct sums (the set is a free set); a
/// weighted norm-sum bound is not, and the spec is flagged accordingly.
struct DomainSpec {
    std::vector<DomainConstraint> constraints;

    bool satisfied(const MatrixTuple& x) const;

    /// False iff some constraint breaks closure under direct sums.
    bool is_free_set() const;

    void validate(int num_vars) const;

    nlohmann::json to_json() const;
    static DomainSpec from_json(const nlohmann::json& j);
};

}  // namespace freejac

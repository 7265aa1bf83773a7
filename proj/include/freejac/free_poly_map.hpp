#pragma once

#include <vector>

#include "freejac/free_poly.hpp"

namespace freejac {

/// An ordered tuple of free polynomials in a common variable alphabet:
/// a polynomial map from matrix N-tuples to matrix N_out-tuples.
struct FreePolyMap {
    int num_vars = 1;
    std::vector<FreePoly> components;

    FreePolyMap() = default;
    FreePolyMap(int n, std::vector<FreePoly> comps);

    int num_outputs() const noexcept { return static_cast<int>(components.size()); }
    int degree() const noexcept;
    bool has_constant_term() const noexcept;

    friend bool operator==(const FreePolyMap& a, const FreePolyMap& b) {
        return a.num_vars == b.num_vars && a.components == b.components;
    }
    friend bool operator!=(const FreePolyMap& a, const FreePolyMap& b) { return !(a == b); }
};

/// The identity map (X_1, ..., X_N).
FreePolyMap identity_map(int num_vars);

/// Componentwise substitution: (P o Q)(X) = P(Q(X)). Q must produce as many
/// outputs as P has variables.
FreePolyMap compose(const FreePolyMap& p, const FreePolyMap& q, int max_degree = -1);

FreePolyMap truncate(const FreePolyMap& p, int max_degree);

bool approx_equal(const FreePolyMap& p, const FreePolyMap& q, double tol = kCoeffTol);

/// Componentwise formal derivative; entry i is D(P_i).
std::vector<BiPoly> formal_derivative(const FreePolyMap& p);

}  // namespace freejac

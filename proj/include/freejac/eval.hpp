#pragma once

#include "freejac/free_poly_map.hpp"
#include "freejac/matrix_tuple.hpp"

namespace freejac {

/// Evaluates one polynomial on a matrix tuple. The empty word evaluates to
/// the identity; words multiply left to right, with common prefixes shared.
Eigen::MatrixXcd eval_poly(const FreePoly& p, const MatrixTuple& x);

/// Componentwise evaluation of a map; output has num_outputs matrices.
MatrixTuple eval_map(const FreePolyMap& p, const MatrixTuple& x);

struct JetResult {
    MatrixTuple value;       ///< diagonal block, equals eval_map(P, X)
    MatrixTuple derivative;  ///< upper-right block, the derivative along H
};

/// Evaluates P on the 2n-sized tuple with blocks [[X_i, H_i], [0, X_i]] and
/// splits the output blocks. The lower-left block of each output is exactly
/// zero and the two diagonal blocks agree; both are asserted.
JetResult jet_eval(const FreePolyMap& p, const MatrixTuple& x, const MatrixTuple& h);

/// Evaluates the formal derivative of P at the concatenated tuple (X, H).
/// Independent of jet_eval's block route; the two must agree.
MatrixTuple eval_formal_derivative(const FreePolyMap& p, const MatrixTuple& x,
                                   const MatrixTuple& h);
MatrixTuple eval_formal_derivative(const std::vector<BiPoly>& dp, const MatrixTuple& x,
                                   const MatrixTuple& h);

}  // namespace freejac

#pragma once

#include "freejac/free_poly_map.hpp"

namespace freejac {

inline constexpr double kSeriesLinearCondLimit = 1e10;

/// A truncated compositional inverse: P o map = identity through the stated
/// degree (coefficientwise within kCoeffTol), recorded in `valid`.
struct SeriesMap {
    FreePolyMap map;
    int degree = 0;
    bool valid = false;
};

/// Inverts P as a truncated free power series by fixed-point iteration:
/// with P = L*X + higher(P) and L the linear coefficient matrix,
///   Q <- L^{-1} (Y - higher(P)(Q)), truncated at d,
/// gains one exact degree per pass, so d passes suffice. Requires square
/// arity, no constant terms, and an invertible linear part.
SeriesMap series_inverse(const FreePolyMap& p, int degree);

}  // namespace freejac

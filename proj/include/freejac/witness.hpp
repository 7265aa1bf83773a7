#pragma once

#include <json.hpp>

#include "freejac/eval.hpp"

namespace freejac {

inline constexpr double kWitnessTol = 1e-8;
inline constexpr double kCollisionPreTol = 1e-10;

/// max(1, |X|, |P(X)|) with tuple Frobenius norms; the mixed guard used by
/// every witness tolerance.
double witness_scale(const FreePolyMap& p, const MatrixTuple& x);

/// A nonzero direction annihilated by the derivative at X: evidence that
/// DP(X) is singular, hence that P is not injective.
struct KernelWitness {
    MatrixTuple x;
    MatrixTuple h;
    double residual = 0.0;  ///< |DP(X)[H]| / |H|

    nlohmann::json to_json() const;
    static KernelWitness from_json(const nlohmann::json& j);
};

/// Builds a kernel witness, measuring the residual through the block-jet
/// route, and rejects it unless residual <= 1e-8 * scale and H != 0.
KernelWitness make_kernel_witness(const FreePolyMap& p, const MatrixTuple& x,
                                  const MatrixTuple& h);

/// Two distinct inputs with (numerically) equal images.
struct CollisionWitness {
    MatrixTuple x_a;
    MatrixTuple x_b;
    double image_gap = 0.0;  ///< |P(X_a) - P(X_b)|

    nlohmann::json to_json() const;
};

/// From a kernel direction to a collision: X_a has blocks [[X, H], [0, X]],
/// X_b = X (+) X. The jet identity makes P(X_a) = P(X_b) up to |DP(X)[H]|.
CollisionWitness collision_from_kernel(const FreePolyMap& p, const KernelWitness& w);

/// From a collision to a kernel direction: X = X1 (+) X2 and H places
/// X1 - X2 in the upper-right block; the derivative annihilates it.
KernelWitness kernel_from_collision(const FreePolyMap& p, const MatrixTuple& x1,
                                    const MatrixTuple& x2);

}  // namespace freejac

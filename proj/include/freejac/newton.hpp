#pragma once

#include <optional>

#include "freejac/linearize.hpp"

namespace freejac {

struct NewtonResult {
    enum class Status { converged, singular_derivative, max_iter_exceeded };

    Status status = Status::max_iter_exceeded;
    MatrixTuple z;            ///< final (or best-residual) iterate
    double residual = 0.0;    ///< |P(Z) - W|
    int iterations = 0;
    std::optional<SingularityCertificate> certificate;  ///< on a singular stop

    bool converged() const noexcept { return status == Status::converged; }
    nlohmann::json to_json() const;
};

/// Newton's iteration for P(Z) = W: each step solves
/// derivative_matrix(P, Z) vec(H) = vec(W - P(Z)) and updates Z <- Z + H.
/// Succeeds when |P(Z) - W| <= tol * max(1, |W|). A singular derivative at an
/// iterate stops the run with its certificate; running out of iterations
/// returns the best iterate seen. No damping by default; with damping, a step
/// that increases the residual is halved until it does not.
NewtonResult newton_invert(const FreePolyMap& p, const MatrixTuple& w, const MatrixTuple& z0,
                           double tol, int max_iter, bool damping = false);

}  // namespace freejac

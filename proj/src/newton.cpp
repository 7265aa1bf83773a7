#include "freejac/newton.hpp"

#include "freejac/error.hpp"

namespace freejac {

namespace {

const char* status_name(NewtonResult::Status s) {
    switch (s) {
        case NewtonResult::Status::converged: return "converged";
        case NewtonResult::Status::singular_derivative: return "singular_derivative";
        case NewtonResult::Status::max_iter_exceeded: return "max_iter_exceeded";
    }
    return "unknown";
}

}  // namespace

nlohmann::json NewtonResult::to_json() const {
    nlohmann::json j{{"status", status_name(status)},
                     {"Z", z.to_json()},
                     {"residual", residual},
                     {"iterations", iterations}};
    if (certificate) j["certificate"] = certificate->to_json();
    return j;
}

NewtonResult newton_invert(const FreePolyMap& p, const MatrixTuple& w, const MatrixTuple& z0,
                           double tol, int max_iter, bool damping) {
    if (p.num_outputs() != p.num_vars) {
        throw Error(ErrorCode::arity_mismatch,
                    "numerical inversion needs as many components as variables");
    }
    if (w.count() != p.num_vars || z0.count() != p.num_vars || w.size() != z0.size()) {
        throw Error(ErrorCode::shape_mismatch,
                    "target and initial tuples must match the map's arity and size");
    }
    if (!(tol > 0.0) || max_iter < 1) {
        throw Error(ErrorCode::invalid_argument, "need tol > 0 and max_iter >= 1");
    }

    const double goal = tol * std::max(1.0, w.norm());
    NewtonResult out;
    out.z = z0;
    MatrixTuple z = z0;
    double res = (w - eval_map(p, z)).norm();
    out.residual = res;

    for (int it = 0; it < max_iter; ++it) {
        if (res <= goal) {
            out.status = NewtonResult::Status::converged;
            out.z = z;
            out.residual = res;
            out.iterations = it;
            return out;
        }
        DerivativeMatrix dm = derivative_matrix(p, z);
        SingularityCertificate cert = singularity_certificate(dm);
        if (cert.singular()) {
            out.status = NewtonResult::Status::singular_derivative;
            out.certificate = std::move(cert);
            out.iterations = it;
            return out;
        }
        Eigen::VectorXcd rhs = dm.vectorize(w - eval_map(p, z));
        Eigen::VectorXcd step = Eigen::PartialPivLU<Eigen::MatrixXcd>(dm.mat).solve(rhs);
        MatrixTuple h = dm.unvectorize(step);

        MatrixTuple z_next = z;
        for (int i = 0; i < z.count(); ++i) z_next.mats[i] = z.mats[i] + h.mats[i];
        double res_next = (w - eval_map(p, z_next)).norm();
        if (damping) {
            double factor = 0.5;
            for (int halvings = 0; halvings < 30 && res_next > res; ++halvings) {
                for (int i = 0; i < z.count(); ++i) {
                    z_next.mats[i] = z.mats[i] + factor * h.mats[i];
                }
                res_next = (w - eval_map(p, z_next)).norm();
                factor *= 0.5;
            }
        }
        z = std::move(z_next);
        res = res_next;
        if (res < out.residual) {
            out.residual = res;
            out.z = z;
        }
        out.iterations = it + 1;
    }
    if (res <= goal) {
        out.status = NewtonResult::Status::converged;
        out.z = z;
        out.residual = res;
        return out;
    }
    out.status = NewtonResult::Status::max_iter_exceeded;
    return out;
}

}  // namespace freejac

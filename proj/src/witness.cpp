#include "freejac/witness.hpp"

#include <algorithm>

#include "freejac/error.hpp"

namespace freejac {

double witness_scale(const FreePolyMap& p, const MatrixTuple& x) {
    return std::max({1.0, x.norm(), eval_map(p, x).norm()});
}

nlohmann::json KernelWitness::to_json() const {
    return nlohmann::json{{"X", x.to_json()}, {"H", h.to_json()}, {"residual", residual}};
}

KernelWitness KernelWitness::from_json(const nlohmann::json& j) {
    KernelWitness w;
    w.x = MatrixTuple::from_json(j.at("X"));
    w.h = MatrixTuple::from_json(j.at("H"));
    w.residual = j.value("residual", 0.0);
    return w;
}

nlohmann::json CollisionWitness::to_json() const {
    return nlohmann::json{
        {"X_a", x_a.to_json()}, {"X_b", x_b.to_json()}, {"image_gap", image_gap}};
}

KernelWitness make_kernel_witness(const FreePolyMap& p, const MatrixTuple& x,
                                  const MatrixTuple& h) {
    const double hnorm = h.norm();
    if (hnorm == 0.0) {
        throw Error(ErrorCode::witness_invalid, "a kernel witness needs a nonzero direction");
    }
    KernelWitness w{x, h, 0.0};
    w.residual = jet_eval(p, x, h).derivative.norm() / hnorm;
    const double scale = witness_scale(p, x);
    if (w.residual > kWitnessTol * scale) {
        throw Error(ErrorCode::witness_invalid,
                    "derivative does not annihilate the direction within tolerance",
                    nlohmann::json{{"residual", w.residual},
                                   {"bound", kWitnessTol * scale}});
    }
    return w;
}

CollisionWitness collision_from_kernel(const FreePolyMap& p, const KernelWitness& w) {
    const double hnorm = w.h.norm();
    if (hnorm == 0.0) {
        throw Error(ErrorCode::witness_invalid, "a kernel witness needs a nonzero direction");
    }
    const double scale = witness_scale(p, w.x);
    const double residual = jet_eval(p, w.x, w.h).derivative.norm() / hnorm;
    if (residual > kWitnessTol * scale) {
        throw Error(ErrorCode::witness_invalid,
                    "witness residual too large to certify a collision",
                    nlohmann::json{{"residual", residual}, {"bound", kWitnessTol * scale}});
    }

    const int n = w.x.size();
    std::vector<Eigen::MatrixXcd> a_mats, b_mats;
    a_mats.reserve(w.x.mats.size());
    b_mats.reserve(w.x.mats.size());
    for (int i = 0; i < w.x.count(); ++i) {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
        a.topLeftCorner(n, n) = w.x.mats[i];
        a.topRightCorner(n, n) = w.h.mats[i];
        a.bottomRightCorner(n, n) = w.x.mats[i];
        a_mats.push_back(std::move(a));

        Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
        b.topLeftCorner(n, n) = w.x.mats[i];
        b.bottomRightCorner(n, n) = w.x.mats[i];
        b_mats.push_back(std::move(b));
    }
    CollisionWitness out{MatrixTuple(std::move(a_mats)), MatrixTuple(std::move(b_mats)), 0.0};
    out.image_gap = (eval_map(p, out.x_a) - eval_map(p, out.x_b)).norm();

    const double big_scale = witness_scale(p, out.x_a);
    if (out.image_gap > kWitnessTol * big_scale) {
        throw Error(ErrorCode::witness_invalid,
                    "amplified image gap exceeds the collision tolerance",
                    nlohmann::json{{"image_gap", out.image_gap},
                                   {"bound", kWitnessTol * big_scale}});
    }
    if ((out.x_a - out.x_b).norm() <= kCollisionPreTol * big_scale) {
        throw Error(ErrorCode::witness_invalid, "collision inputs are not distinct");
    }
    return out;
}

KernelWitness kernel_from_collision(const FreePolyMap& p, const MatrixTuple& x1,
                                    const MatrixTuple& x2) {
    if (x1.count() != x2.count() || x1.size() != x2.size()) {
        throw Error(ErrorCode::shape_mismatch, "collision inputs must have the same shape");
    }
    const double scale =
        std::max({1.0, x1.norm(), x2.norm(), eval_map(p, x1).norm(), eval_map(p, x2).norm()});
    const double gap = (eval_map(p, x1) - eval_map(p, x2)).norm();
    if (gap > kCollisionPreTol * scale) {
        throw Error(ErrorCode::collision_invalid, "images differ; the inputs do not collide",
                    nlohmann::json{{"image_gap", gap}, {"bound", kCollisionPreTol * scale}});
    }
    if ((x1 - x2).norm() <= kCollisionPreTol * scale) {
        throw Error(ErrorCode::collision_invalid, "collision inputs are equal");
    }

    const int n = x1.size();
    std::vector<Eigen::MatrixXcd> h_mats;
    h_mats.reserve(x1.mats.size());
    for (int i = 0; i < x1.count(); ++i) {
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
        h.topRightCorner(n, n) = x1.mats[i] - x2.mats[i];
        h_mats.push_back(std::move(h));
    }
    return make_kernel_witness(p, direct_sum(x1, x2), MatrixTuple(std::move(h_mats)));
}

}  // namespace freejac

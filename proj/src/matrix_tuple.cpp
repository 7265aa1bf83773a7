#include "freejac/matrix_tuple.hpp"

#include <cmath>
#include <limits>

#include "freejac/error.hpp"

namespace freejac {

namespace {

void require_same_shape(const MatrixTuple& a, const MatrixTuple& b, const char* what) {
    if (a.count() != b.count()) {
        throw Error(ErrorCode::shape_mismatch,
                    std::string(what) + ": component counts differ (" +
                        std::to_string(a.count()) + " vs " + std::to_string(b.count()) + ")");
    }
}

}  // namespace

MatrixTuple::MatrixTuple(std::vector<Eigen::MatrixXcd> ms) : mats(std::move(ms)) {
    if (mats.empty()) {
        throw Error(ErrorCode::empty_tuple, "a matrix tuple needs at least one component");
    }
    const auto n = mats.front().rows();
    if (n < 1) {
        throw Error(ErrorCode::shape_mismatch, "matrices must have size at least 1");
    }
    for (const auto& m : mats) {
        if (m.rows() != n || m.cols() != n) {
            throw Error(ErrorCode::shape_mismatch,
                        "all matrices in a tuple must be square with a common size");
        }
    }
}

MatrixTuple MatrixTuple::zero(int count, int n) {
    std::vector<Eigen::MatrixXcd> ms(count, Eigen::MatrixXcd::Zero(n, n));
    return MatrixTuple(std::move(ms));
}

double MatrixTuple::norm() const noexcept {
    double s = 0.0;
    for (const auto& m : mats) s += m.squaredNorm();
    return std::sqrt(s);
}

MatrixTuple operator-(const MatrixTuple& a, const MatrixTuple& b) {
    require_same_shape(a, b, "tuple difference");
    if (a.size() != b.size()) {
        throw Error(ErrorCode::shape_mismatch, "tuple difference: matrix sizes differ");
    }
    std::vector<Eigen::MatrixXcd> ms;
    ms.reserve(a.mats.size());
    for (int i = 0; i < a.count(); ++i) ms.push_back(a.mats[i] - b.mats[i]);
    return MatrixTuple(std::move(ms));
}

nlohmann::json MatrixTuple::to_json() const {
    nlohmann::json matrices = nlohmann::json::array();
    const int n = size();
    for (const auto& m : mats) {
        nlohmann::json entries = nlohmann::json::array();
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                entries.push_back({m(r, c).real(), m(r, c).imag()});
            }
        }
        matrices.push_back(std::move(entries));
    }
    return nlohmann::json{{"n", n}, {"matrices", std::move(matrices)}};
}

MatrixTuple MatrixTuple::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("matrices")) {
        throw Error(ErrorCode::shape_mismatch,
                    "matrix-tuple JSON needs fields \"n\" and \"matrices\"");
    }
    const int n = j.at("n").get<int>();
    if (n < 1) throw Error(ErrorCode::shape_mismatch, "matrix size must be at least 1");
    const auto& matrices = j.at("matrices");
    if (!matrices.is_array() || matrices.empty()) {
        throw Error(ErrorCode::empty_tuple, "matrix-tuple JSON needs at least one matrix");
    }
    std::vector<Eigen::MatrixXcd> ms;
    ms.reserve(matrices.size());
    for (const auto& entries : matrices) {
        if (!entries.is_array() || static_cast<int>(entries.size()) != n * n) {
            throw Error(ErrorCode::shape_mismatch,
                        "each matrix must be a flat row-major list of n*n [re, im] pairs");
        }
        Eigen::MatrixXcd m(n, n);
        int k = 0;
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c, ++k) {
                const auto& e = entries.at(k);
                if (!e.is_array() || e.size() != 2) {
                    throw Error(ErrorCode::shape_mismatch,
                                "matrix entries must be [re, im] pairs");
                }
                m(r, c) = std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>());
            }
        }
        ms.push_back(std::move(m));
    }
    return MatrixTuple(std::move(ms));
}

double op_norm(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

MatrixTuple direct_sum(const MatrixTuple& a, const MatrixTuple& b) {
    require_same_shape(a, b, "direct sum");
    const int na = a.size(), nb = b.size();
    std::vector<Eigen::MatrixXcd> ms;
    ms.reserve(a.mats.size());
    for (int i = 0; i < a.count(); ++i) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(na + nb, na + nb);
        m.topLeftCorner(na, na) = a.mats[i];
        m.bottomRightCorner(nb, nb) = b.mats[i];
        ms.push_back(std::move(m));
    }
    return MatrixTuple(std::move(ms));
}

MatrixTuple similarity(const MatrixTuple& a, const Eigen::MatrixXcd& s) {
    const int n = a.size();
    if (s.rows() != n || s.cols() != n) {
        throw Error(ErrorCode::shape_mismatch, "similarity matrix size does not match the tuple");
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(n - 1);
    const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (!(cond < kSimilarityCondLimit)) {
        throw Error(ErrorCode::ill_conditioned,
                    "similarity matrix is singular or ill-conditioned",
                    nlohmann::json{{"condition_estimate", cond}});
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s);
    std::vector<Eigen::MatrixXcd> ms;
    ms.reserve(a.mats.size());
    for (const auto& m : a.mats) ms.push_back(lu.solve(m * s));
    return MatrixTuple(std::move(ms));
}

}  // namespace freejac

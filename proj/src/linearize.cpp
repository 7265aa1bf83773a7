#include "freejac/linearize.hpp"

#include <map>
#include <unsupported/Eigen/KroneckerProduct>

#include "freejac/digest.hpp"
#include "freejac/error.hpp"

namespace freejac {

namespace {

/// Memoized products for prefixes and suffixes of the words of one map.
class SegmentCache {
  public:
    explicit SegmentCache(const MatrixTuple& x)
        : x_(x), unit_(Eigen::MatrixXcd::Identity(x.size(), x.size())) {}

    const Eigen::MatrixXcd& prefix(const Word& w, std::size_t len) {
        if (len == 0) return unit_;
        Word key = w.prefix(len);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Eigen::MatrixXcd m = prefix(w, len - 1) * x_.mats[key.letters.back()];
        return cache_.emplace(std::move(key), std::move(m)).first->second;
    }

    const Eigen::MatrixXcd& suffix(const Word& w, std::size_t start) {
        if (start == w.length()) return unit_;
        Word key = w.suffix(start);
        auto it = suffix_cache_.find(key);
        if (it != suffix_cache_.end()) return it->second;
        Eigen::MatrixXcd m = x_.mats[key.letters.front()] * suffix(w, start + 1);
        return suffix_cache_.emplace(std::move(key), std::move(m)).first->second;
    }

  private:
    const MatrixTuple& x_;
    Eigen::MatrixXcd unit_;
    std::map<Word, Eigen::MatrixXcd> cache_;
    std::map<Word, Eigen::MatrixXcd> suffix_cache_;
};

}  // namespace

Eigen::VectorXcd DerivativeMatrix::vectorize(const MatrixTuple& h) const {
    if (h.count() != num_vars || h.size() != n) {
        throw Error(ErrorCode::shape_mismatch, "direction tuple does not match the derivative");
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(num_vars) * n * n);
    for (int j = 0; j < num_vars; ++j) {
        v.segment(static_cast<Eigen::Index>(j) * n * n, n * n) =
            Eigen::Map<const Eigen::VectorXcd>(h.mats[j].data(), n * n);
    }
    return v;
}

MatrixTuple DerivativeMatrix::unvectorize(const Eigen::VectorXcd& v) const {
    if (v.size() != static_cast<Eigen::Index>(num_vars) * n * n) {
        throw Error(ErrorCode::shape_mismatch, "vector length does not match the derivative");
    }
    std::vector<Eigen::MatrixXcd> ms;
    ms.reserve(num_vars);
    for (int j = 0; j < num_vars; ++j) {
        ms.push_back(Eigen::Map<const Eigen::MatrixXcd>(
            v.data() + static_cast<Eigen::Index>(j) * n * n, n, n));
    }
    return MatrixTuple(std::move(ms));
}

nlohmann::json DerivativeMatrix::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
        for (Eigen::Index c = 0; c < mat.cols(); ++c) {
            entries.push_back({mat(r, c).real(), mat(r, c).imag()});
        }
    }
    return nlohmann::json{{"rows", mat.rows()},     {"cols", mat.cols()},
                          {"n", n},                 {"num_vars", num_vars},
                          {"num_outputs", num_outputs}, {"entries", std::move(entries)},
                          {"map_digest", map_digest}, {"point_digest", point_digest}};
}

DerivativeMatrix derivative_matrix(const FreePolyMap& p, const MatrixTuple& x) {
    if (x.count() != p.num_vars) {
        throw Error(ErrorCode::variable_mismatch,
                    "map has " + std::to_string(p.num_vars) + " variables but the tuple has " +
                        std::to_string(x.count()) + " matrices");
    }
    const int n = x.size();
    const int nn = n * n;
    DerivativeMatrix out;
    out.n = n;
    out.num_vars = p.num_vars;
    out.num_outputs = p.num_outputs();
    out.map_digest = digest(p);
    out.point_digest = digest(x);
    out.mat = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(out.num_outputs) * nn,
                                     static_cast<Eigen::Index>(out.num_vars) * nn);
    SegmentCache cache(x);
    for (int comp = 0; comp < p.num_outputs(); ++comp) {
        for (const auto& [w, c] : p.components[comp].terms()) {
            for (std::size_t k = 0; k < w.length(); ++k) {
                const auto j = w.letters[k];
                const Eigen::MatrixXcd& left = cache.prefix(w, k);
                const Eigen::MatrixXcd& right = cache.suffix(w, k + 1);
                out.mat.block(static_cast<Eigen::Index>(comp) * nn,
                              static_cast<Eigen::Index>(j) * nn, nn, nn) +=
                    c * Eigen::kroneckerProduct(right.transpose(), left);
            }
        }
    }
    if (!out.mat.allFinite()) {
        throw Error(ErrorCode::invalid_argument,
                    "derivative matrix has non-finite entries");
    }
    return out;
}

nlohmann::json SingularityCertificate::to_json() const {
    nlohmann::json j{{"verdict", singular() ? "singular" : "nonsingular"},
                     {"sigma_min", sigma_min},
                     {"sigma_max", sigma_max},
                     {"threshold", threshold},
                     {"margin", threshold > 0.0 ? sigma_min / threshold : 0.0}};
    if (kernel) j["kernel"] = kernel->to_json();
    return j;
}

SingularityCertificate singularity_certificate(const DerivativeMatrix& m) {
    SingularityCertificate cert;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.mat, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    cert.sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    // a wide matrix has a nontrivial kernel regardless of its singular values
    const bool wide = m.mat.cols() > m.mat.rows();
    cert.sigma_min = wide ? 0.0 : (sv.size() > 0 ? sv(sv.size() - 1) : 0.0);
    cert.threshold = kSingularityTol * std::max(1.0, cert.sigma_max);
    if (cert.sigma_min <= cert.threshold) {
        cert.verdict = SingularityCertificate::Verdict::singular;
        Eigen::VectorXcd v = svd.matrixV().col(svd.matrixV().cols() - 1);
        // phase normalization: largest entry real positive
        Eigen::Index peak = 0;
        v.cwiseAbs().maxCoeff(&peak);
        if (std::abs(v(peak)) > 0.0) v *= std::abs(v(peak)) / v(peak);
        cert.kernel = m.unvectorize(v);
    }
    return cert;
}

}  // namespace freejac

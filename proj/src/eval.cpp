#include "freejac/eval.hpp"

#include <map>

#include "freejac/error.hpp"

namespace freejac {

namespace {

/// Word products of one tuple, memoized on prefixes: the product for a word
/// is the cached product of its longest proper prefix times the last letter.
class WordProductCache {
  public:
    explicit WordProductCache(const MatrixTuple& x)
        : x_(x), unit_(Eigen::MatrixXcd::Identity(x.size(), x.size())) {}

    const Eigen::MatrixXcd& product(const Word& w) {
        if (w.empty()) return unit_;
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        const Eigen::MatrixXcd& head = product(w.prefix(w.length() - 1));
        Eigen::MatrixXcd m = head * x_.mats[w.letters.back()];
        return cache_.emplace(w, std::move(m)).first->second;
    }

  private:
    const MatrixTuple& x_;
    Eigen::MatrixXcd unit_;
    std::map<Word, Eigen::MatrixXcd> cache_;
};

void require_arity(const FreePolyMap& p, const MatrixTuple& x) {
    if (x.count() != p.num_vars) {
        throw Error(ErrorCode::variable_mismatch,
                    "map has " + std::to_string(p.num_vars) + " variables but the tuple has " +
                        std::to_string(x.count()) + " matrices");
    }
}

MatrixTuple concat(const MatrixTuple& x, const MatrixTuple& h) {
    std::vector<Eigen::MatrixXcd> ms = x.mats;
    ms.insert(ms.end(), h.mats.begin(), h.mats.end());
    return MatrixTuple(std::move(ms));
}

Eigen::MatrixXcd eval_with_cache(const FreePoly& p, WordProductCache& cache, int n) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [w, c] : p.terms()) acc += c * cache.product(w);
    return acc;
}

}  // namespace

Eigen::MatrixXcd eval_poly(const FreePoly& p, const MatrixTuple& x) {
    if (x.count() != p.num_vars()) {
        throw Error(ErrorCode::variable_mismatch,
                    "polynomial has " + std::to_string(p.num_vars()) +
                        " variables but the tuple has " + std::to_string(x.count()) +
                        " matrices");
    }
    WordProductCache cache(x);
    return eval_with_cache(p, cache, x.size());
}

MatrixTuple eval_map(const FreePolyMap& p, const MatrixTuple& x) {
    require_arity(p, x);
    WordProductCache cache(x);
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(p.components.size());
    for (const auto& c : p.components) out.push_back(eval_with_cache(c, cache, x.size()));
    return MatrixTuple(std::move(out));
}

JetResult jet_eval(const FreePolyMap& p, const MatrixTuple& x, const MatrixTuple& h) {
    require_arity(p, x);
    if (h.count() != x.count() || h.size() != x.size()) {
        throw Error(ErrorCode::shape_mismatch,
                    "point and direction tuples must have the same shape");
    }
    const int n = x.size();
    std::vector<Eigen::MatrixXcd> blocks;
    blocks.reserve(x.mats.size());
    for (int i = 0; i < x.count(); ++i) {
        Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
        b.topLeftCorner(n, n) = x.mats[i];
        b.topRightCorner(n, n) = h.mats[i];
        b.bottomRightCorner(n, n) = x.mats[i];
        blocks.push_back(std::move(b));
    }
    MatrixTuple big = eval_map(p, MatrixTuple(std::move(blocks)));

    std::vector<Eigen::MatrixXcd> value, deriv;
    value.reserve(big.mats.size());
    deriv.reserve(big.mats.size());
    for (const auto& m : big.mats) {
        // structural contract of the block evaluation
        if (m.bottomLeftCorner(n, n).norm() != 0.0) {
            throw Error(ErrorCode::shape_mismatch,
                        "jet evaluation produced a nonzero lower-left block");
        }
        value.push_back(m.topLeftCorner(n, n));
        deriv.push_back(m.topRightCorner(n, n));
    }
    return JetResult{MatrixTuple(std::move(value)), MatrixTuple(std::move(deriv))};
}

MatrixTuple eval_formal_derivative(const FreePolyMap& p, const MatrixTuple& x,
                                   const MatrixTuple& h) {
    return eval_formal_derivative(formal_derivative(p), x, h);
}

MatrixTuple eval_formal_derivative(const std::vector<BiPoly>& dp, const MatrixTuple& x,
                                   const MatrixTuple& h) {
    if (dp.empty()) throw Error(ErrorCode::empty_tuple, "empty derivative");
    if (x.count() != dp.front().base_vars || h.count() != x.count() || h.size() != x.size()) {
        throw Error(ErrorCode::shape_mismatch,
                    "derivative evaluation needs matching point and direction tuples");
    }
    MatrixTuple xh = concat(x, h);
    WordProductCache cache(xh);
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(dp.size());
    for (const auto& d : dp) out.push_back(eval_with_cache(d.poly, cache, x.size()));
    return MatrixTuple(std::move(out));
}

}  // namespace freejac

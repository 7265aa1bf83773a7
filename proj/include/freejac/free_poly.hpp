#pragma once

#include <complex>
#include <map>
#include <vector>

#include "freejac/word.hpp"

namespace freejac {

using cplx = std::complex<double>;

/// Coefficients below this magnitude are dropped after every ring operation,
/// keeping sparse representations canonical under float round-off.
inline constexpr double kPruneThreshold = 1e-14;

/// Coefficient comparisons use this absolute tolerance scaled by the largest
/// coefficient magnitude of the operands.
inline constexpr double kCoeffTol = 1e-9;

/// A free (noncommutative) polynomial over the complex numbers: a sparse
/// association from words to coefficients. Immutable in spirit; the mutating
/// operators exist to build values, after which instances are safe to share
/// across threads.
class FreePoly {
  public:
    using TermMap = std::map<Word, cplx>;

    explicit FreePoly(int num_vars = 1);

    static FreePoly zero(int num_vars) { return FreePoly(num_vars); }
    static FreePoly constant(int num_vars, cplx c);
    static FreePoly variable(int num_vars, int index);
    static FreePoly monomial(int num_vars, Word w, cplx c);

    int num_vars() const noexcept { return num_vars_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    /// Length of the longest stored word; 0 for the zero polynomial.
    int degree() const noexcept;

    cplx coeff(const Word& w) const;
    double max_coeff_magnitude() const noexcept;

    /// Accumulates c onto word w, pruning if the result is negligible.
    void add_term(const Word& w, cplx c);

    FreePoly& operator+=(const FreePoly& rhs);
    FreePoly& operator-=(const FreePoly& rhs);
    FreePoly& operator*=(const FreePoly& rhs);
    FreePoly& operator*=(cplx scalar);
    FreePoly operator-() const;

    friend FreePoly operator+(FreePoly lhs, const FreePoly& rhs) { return lhs += rhs; }
    friend FreePoly operator-(FreePoly lhs, const FreePoly& rhs) { return lhs -= rhs; }
    friend FreePoly operator*(const FreePoly& lhs, const FreePoly& rhs);
    friend FreePoly operator*(FreePoly p, cplx scalar) { return p *= scalar; }
    friend FreePoly operator*(cplx scalar, FreePoly p) { return p *= scalar; }

    /// Exact structural equality: identical word sets, bit-equal coefficients.
    friend bool operator==(const FreePoly& a, const FreePoly& b) {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const FreePoly& a, const FreePoly& b) { return !(a == b); }

  private:
    int num_vars_;
    TermMap terms_;

    friend FreePoly mul_truncated(const FreePoly&, const FreePoly&, int);
};

/// Noncommutative product, discarding words longer than max_degree while
/// accumulating (max_degree < 0 means unbounded).
FreePoly mul_truncated(const FreePoly& p, const FreePoly& q, int max_degree);

/// Drops all words of length greater than max_degree.
FreePoly truncate(const FreePoly& p, int max_degree);

/// Reinterprets p in a larger variable alphabet; words are unchanged.
FreePoly embed(const FreePoly& p, int new_num_vars);

/// Word-by-word substitution x_{i1}...x_{id} -> subs[i1]*...*subs[id].
/// All substituents must share a variable count, which the result adopts.
/// max_degree < 0 keeps every term; otherwise products are truncated on the
/// fly so intermediate results stay small.
FreePoly compose(const FreePoly& p, const std::vector<FreePoly>& subs, int max_degree = -1);

/// Coefficientwise comparison within kCoeffTol scaled by the largest
/// coefficient magnitude of either operand.
bool approx_equal(const FreePoly& p, const FreePoly& q, double tol = kCoeffTol);

/// A polynomial in 2N variables that is linear in the second block: indices
/// 0..N-1 are the point variables, N..2N-1 the direction variables. The
/// directional derivative of a free polynomial lives here.
struct BiPoly {
    int base_vars = 1;
    FreePoly poly;

    BiPoly() : poly(2) {}
    BiPoly(int base, FreePoly p) : base_vars(base), poly(std::move(p)) {}

    /// True iff every word contains exactly one direction index.
    bool is_h_linear() const;

    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.base_vars == b.base_vars && a.poly == b.poly;
    }
};

/// Lifts an N-variable polynomial into the 2N-variable alphabet of BiPoly
/// (point indices unchanged).
BiPoly lift_to_bipoly(const FreePoly& p);

/// The formal directional derivative: for each word and each letter position,
/// replace that letter's point index i by the direction index N+i, keeping
/// the coefficient, and sum. Satisfies the Leibniz rule and is linear in the
/// direction block by construction.
BiPoly formal_derivative(const FreePoly& p);

BiPoly operator+(const BiPoly& a, const BiPoly& b);
/// Products of a derivative with lifted polynomials (Leibniz terms).
BiPoly operator*(const BiPoly& a, const BiPoly& b);

}  // namespace freejac

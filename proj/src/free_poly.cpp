#include "freejac/free_poly.hpp"

#include <algorithm>
#include <cmath>

#include "freejac/error.hpp"

namespace freejac {

namespace {

void require_same_vars(const FreePoly& p, const FreePoly& q) {
    if (p.num_vars() != q.num_vars()) {
        throw Error(ErrorCode::variable_mismatch,
                    "variable-count mismatch: " + std::to_string(p.num_vars()) + " vs " +
                        std::to_string(q.num_vars()));
    }
}

void require_index_in_range(int index, int num_vars) {
    if (index < 0 || index >= num_vars) {
        throw Error(ErrorCode::variable_mismatch,
                    "variable index " + std::to_string(index) + " out of range for " +
                        std::to_string(num_vars) + " variables");
    }
}

}  // namespace

FreePoly::FreePoly(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 1) {
        throw Error(ErrorCode::variable_mismatch, "a free polynomial needs at least one variable");
    }
}

FreePoly FreePoly::constant(int num_vars, cplx c) {
    FreePoly p(num_vars);
    p.add_term(Word{}, c);
    return p;
}

FreePoly FreePoly::variable(int num_vars, int index) {
    require_index_in_range(index, num_vars);
    FreePoly p(num_vars);
    p.add_term(Word{static_cast<std::uint32_t>(index)}, cplx(1.0));
    return p;
}

FreePoly FreePoly::monomial(int num_vars, Word w, cplx c) {
    require_index_in_range(w.max_index() < 0 ? 0 : w.max_index(), num_vars);
    FreePoly p(num_vars);
    p.add_term(w, c);
    return p;
}

int FreePoly::degree() const noexcept {
    if (terms_.empty()) return 0;
    // graded order: the last term has the longest word
    return static_cast<int>(terms_.rbegin()->first.length());
}

cplx FreePoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

double FreePoly::max_coeff_magnitude() const noexcept {
    double m = 0.0;
    for (const auto& [w, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

void FreePoly::add_term(const Word& w, cplx c) {
    if (w.max_index() >= num_vars_) {
        throw Error(ErrorCode::variable_mismatch,
                    "word references variable index " + std::to_string(w.max_index()) +
                        " but the polynomial has " + std::to_string(num_vars_) + " variables");
    }
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        if (std::abs(c) > kPruneThreshold) terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (std::abs(it->second) <= kPruneThreshold) terms_.erase(it);
}

FreePoly& FreePoly::operator+=(const FreePoly& rhs) {
    require_same_vars(*this, rhs);
    for (const auto& [w, c] : rhs.terms_) add_term(w, c);
    return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& rhs) {
    require_same_vars(*this, rhs);
    for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
    return *this;
}

FreePoly& FreePoly::operator*=(const FreePoly& rhs) {
    *this = mul_truncated(*this, rhs, -1);
    return *this;
}

FreePoly& FreePoly::operator*=(cplx scalar) {
    TermMap out;
    for (const auto& [w, c] : terms_) {
        cplx v = c * scalar;
        if (std::abs(v) > kPruneThreshold) out.emplace(w, v);
    }
    terms_ = std::move(out);
    return *this;
}

FreePoly FreePoly::operator-() const {
    FreePoly p = *this;
    for (auto& [w, c] : p.terms_) c = -c;
    return p;
}

FreePoly operator*(const FreePoly& lhs, const FreePoly& rhs) {
    return mul_truncated(lhs, rhs, -1);
}

FreePoly mul_truncated(const FreePoly& p, const FreePoly& q, int max_degree) {
    require_same_vars(p, q);
    FreePoly out(p.num_vars());
    for (const auto& [u, a] : p.terms_) {
        if (max_degree >= 0 && static_cast<int>(u.length()) > max_degree) continue;
        for (const auto& [v, b] : q.terms_) {
            if (max_degree >= 0 && static_cast<int>(u.length() + v.length()) > max_degree) continue;
            out.add_term(u * v, a * b);
        }
    }
    return out;
}

FreePoly truncate(const FreePoly& p, int max_degree) {
    if (max_degree < 0) {
        throw Error(ErrorCode::invalid_argument, "truncation degree must be nonnegative");
    }
    FreePoly out(p.num_vars());
    for (const auto& [w, c] : p.terms()) {
        if (static_cast<int>(w.length()) <= max_degree) out.add_term(w, c);
    }
    return out;
}

FreePoly embed(const FreePoly& p, int new_num_vars) {
    if (new_num_vars < p.num_vars()) {
        throw Error(ErrorCode::variable_mismatch, "cannot embed into a smaller variable alphabet");
    }
    FreePoly out(new_num_vars);
    for (const auto& [w, c] : p.terms()) out.add_term(w, c);
    return out;
}

FreePoly compose(const FreePoly& p, const std::vector<FreePoly>& subs, int max_degree) {
    if (static_cast<int>(subs.size()) != p.num_vars()) {
        throw Error(ErrorCode::arity_mismatch,
                    "substitution arity " + std::to_string(subs.size()) + " does not match " +
                        std::to_string(p.num_vars()) + " variables");
    }
    int target_vars = subs.empty() ? p.num_vars() : subs.front().num_vars();
    for (const auto& s : subs) {
        if (s.num_vars() != target_vars) {
            throw Error(ErrorCode::variable_mismatch,
                        "substituents must share a common variable count");
        }
    }
    FreePoly out(target_vars);
    for (const auto& [w, c] : p.terms()) {
        FreePoly prod = FreePoly::constant(target_vars, c);
        for (auto letter : w.letters) {
            prod = mul_truncated(prod, subs[letter], max_degree);
            if (prod.is_zero()) break;
        }
        out += prod;
    }
    return out;
}

bool approx_equal(const FreePoly& p, const FreePoly& q, double tol) {
    if (p.num_vars() != q.num_vars()) return false;
    double scale = std::max(p.max_coeff_magnitude(), q.max_coeff_magnitude());
    if (scale == 0.0) return true;
    double thr = tol * scale;
    auto it = p.terms().begin();
    auto jt = q.terms().begin();
    while (it != p.terms().end() || jt != q.terms().end()) {
        if (it == p.terms().end()) {
            if (std::abs(jt->second) > thr) return false;
            ++jt;
        } else if (jt == q.terms().end()) {
            if (std::abs(it->second) > thr) return false;
            ++it;
        } else if (it->first < jt->first) {
            if (std::abs(it->second) > thr) return false;
            ++it;
        } else if (jt->first < it->first) {
            if (std::abs(jt->second) > thr) return false;
            ++jt;
        } else {
            if (std::abs(it->second - jt->second) > thr) return false;
            ++it;
            ++jt;
        }
    }
    return true;
}

bool BiPoly::is_h_linear() const {
    const auto base = static_cast<std::uint32_t>(base_vars);
    for (const auto& [w, c] : poly.terms()) {
        int count = 0;
        for (auto letter : w.letters) {
            if (letter >= base) ++count;
        }
        if (count != 1) return false;
    }
    return true;
}

BiPoly lift_to_bipoly(const FreePoly& p) {
    return BiPoly(p.num_vars(), embed(p, 2 * p.num_vars()));
}

BiPoly formal_derivative(const FreePoly& p) {
    const int n = p.num_vars();
    FreePoly d(2 * n);
    for (const auto& [w, c] : p.terms()) {
        for (std::size_t k = 0; k < w.length(); ++k) {
            Word dw = w;
            dw.letters[k] += static_cast<std::uint32_t>(n);
            d.add_term(dw, c);
        }
    }
    return BiPoly(n, std::move(d));
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    if (a.base_vars != b.base_vars) {
        throw Error(ErrorCode::variable_mismatch, "bipolynomial base variable counts differ");
    }
    return BiPoly(a.base_vars, a.poly + b.poly);
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.base_vars != b.base_vars) {
        throw Error(ErrorCode::variable_mismatch, "bipolynomial base variable counts differ");
    }
    return BiPoly(a.base_vars, a.poly * b.poly);
}

}  // namespace freejac

#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace freejac {

/// A monomial in noncommuting variables: a finite sequence of 0-based
/// variable indices. The empty word is the unit monomial.
///
/// Canonical word order is graded: first by length, ties broken
/// lexicographically. All term iteration and serialization follow it.
struct Word {
    std::vector<std::uint32_t> letters;

    Word() = default;
    Word(std::initializer_list<std::uint32_t> ls) : letters(ls) {}
    explicit Word(std::vector<std::uint32_t> ls) : letters(std::move(ls)) {}

    std::size_t length() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }

    /// Largest variable index used, or -1 for the unit monomial.
    int max_index() const noexcept {
        int m = -1;
        for (auto l : letters) m = std::max(m, static_cast<int>(l));
        return m;
    }

    Word prefix(std::size_t k) const {
        return Word(std::vector<std::uint32_t>(letters.begin(), letters.begin() + k));
    }
    Word suffix(std::size_t k) const {
        return Word(std::vector<std::uint32_t>(letters.begin() + k, letters.end()));
    }

    friend Word operator*(const Word& u, const Word& v) {
        Word w = u;
        w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
        return w;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

    /// Graded-lexicographic order.
    friend bool operator<(const Word& a, const Word& b) {
        if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
        return a.letters < b.letters;
    }
};

}  // namespace freejac

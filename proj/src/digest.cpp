#include "freejac/digest.hpp"

#include <cstring>

namespace freejac {

namespace {

class Fnv {
  public:
    void feed(std::string_view bytes) {
        for (unsigned char b : bytes) {
            state_ ^= b;
            state_ *= 0x100000001b3ULL;
        }
    }
    void feed(double v) {
        char buf[sizeof(double)];
        std::memcpy(buf, &v, sizeof(double));
        feed(std::string_view(buf, sizeof(double)));
    }
    void feed(std::uint64_t v) {
        char buf[sizeof(v)];
        std::memcpy(buf, &v, sizeof(v));
        feed(std::string_view(buf, sizeof(v)));
    }
    std::uint64_t value() const { return state_; }

  private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    Fnv f;
    f.feed(bytes);
    return f.value();
}

std::string hex_digest(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

std::string digest(const MatrixTuple& x) {
    Fnv f;
    f.feed(static_cast<std::uint64_t>(x.count()));
    f.feed(static_cast<std::uint64_t>(x.size()));
    for (const auto& m : x.mats) {
        for (int c = 0; c < m.cols(); ++c) {
            for (int r = 0; r < m.rows(); ++r) {
                f.feed(m(r, c).real());
                f.feed(m(r, c).imag());
            }
        }
    }
    return hex_digest(f.value());
}

std::string digest(const FreePolyMap& p) {
    Fnv f;
    f.feed(static_cast<std::uint64_t>(p.num_vars));
    f.feed(static_cast<std::uint64_t>(p.components.size()));
    for (const auto& comp : p.components) {
        for (const auto& [w, c] : comp.terms()) {
            f.feed(static_cast<std::uint64_t>(w.length()));
            for (auto l : w.letters) f.feed(static_cast<std::uint64_t>(l));
            f.feed(c.real());
            f.feed(c.imag());
        }
    }
    return hex_digest(f.value());
}

}  // namespace freejac

#include "freejac/free_poly_map.hpp"

#include <algorithm>

#include "freejac/error.hpp"

namespace freejac {

FreePolyMap::FreePolyMap(int n, std::vector<FreePoly> comps)
    : num_vars(n), components(std::move(comps)) {
    if (components.empty()) {
        throw Error(ErrorCode::empty_tuple, "a polynomial map needs at least one component");
    }
    for (const auto& c : components) {
        if (c.num_vars() != num_vars) {
            throw Error(ErrorCode::variable_mismatch,
                        "all components must share the map's variable count");
        }
    }
}

int FreePolyMap::degree() const noexcept {
    int d = 0;
    for (const auto& c : components) d = std::max(d, c.degree());
    return d;
}

bool FreePolyMap::has_constant_term() const noexcept {
    for (const auto& c : components) {
        if (std::abs(c.coeff(Word{})) > kPruneThreshold) return true;
    }
    return false;
}

FreePolyMap identity_map(int num_vars) {
    std::vector<FreePoly> comps;
    comps.reserve(num_vars);
    for (int i = 0; i < num_vars; ++i) comps.push_back(FreePoly::variable(num_vars, i));
    return FreePolyMap(num_vars, std::move(comps));
}

FreePolyMap compose(const FreePolyMap& p, const FreePolyMap& q, int max_degree) {
    if (q.num_outputs() != p.num_vars) {
        throw Error(ErrorCode::arity_mismatch,
                    "inner map produces " + std::to_string(q.num_outputs()) +
                        " outputs but outer map has " + std::to_string(p.num_vars) +
                        " variables");
    }
    std::vector<FreePoly> comps;
    comps.reserve(p.components.size());
    for (const auto& c : p.components) comps.push_back(compose(c, q.components, max_degree));
    return FreePolyMap(q.num_vars, std::move(comps));
}

FreePolyMap truncate(const FreePolyMap& p, int max_degree) {
    std::vector<FreePoly> comps;
    comps.reserve(p.components.size());
    for (const auto& c : p.components) comps.push_back(truncate(c, max_degree));
    return FreePolyMap(p.num_vars, std::move(comps));
}

bool approx_equal(const FreePolyMap& p, const FreePolyMap& q, double tol) {
    if (p.num_vars != q.num_vars || p.components.size() != q.components.size()) return false;
    for (std::size_t i = 0; i < p.components.size(); ++i) {
        if (!approx_equal(p.components[i], q.components[i], tol)) return false;
    }
    return true;
}

std::vector<BiPoly> formal_derivative(const FreePolyMap& p) {
    std::vector<BiPoly> out;
    out.reserve(p.components.size());
    for (const auto& c : p.components) out.push_back(formal_derivative(c));
    return out;
}

}  // namespace freejac

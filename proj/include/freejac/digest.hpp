#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "freejac/free_poly_map.hpp"
#include "freejac/matrix_tuple.hpp"

namespace freejac {

/// FNV-1a over bytes, rendered as 16 hex digits. Used only to tag values in
/// reports; not cryptographic.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_digest(std::uint64_t value);

std::string digest(const MatrixTuple& x);
std::string digest(const FreePolyMap& p);

}  // namespace freejac

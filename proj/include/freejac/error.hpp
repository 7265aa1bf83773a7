#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace freejac {

/// Stable error codes surfaced through the CLI as machine-readable JSON.
enum class ErrorCode {
    syntax_error,
    unknown_identifier,
    bad_exponent,
    empty_tuple,
    variable_mismatch,
    arity_mismatch,
    shape_mismatch,
    ill_conditioned,
    near_singular_pencil,
    domain_unsatisfiable,
    witness_invalid,
    collision_invalid,
    constant_term,
    singular_linear_part,
    singular_derivative,
    max_iter_exceeded,
    io_error,
    invalid_argument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string message, nlohmann::json data = nullptr)
        : std::runtime_error(std::move(message)), code_(code), data_(std::move(data)) {}

    ErrorCode code() const noexcept { return code_; }
    const nlohmann::json& data() const noexcept { return data_; }

    /// {"error": {"code": ..., "message": ..., "data": ...}}
    nlohmann::json to_json() const;

  private:
    ErrorCode code_;
    nlohmann::json data_;
};

}  // namespace freejac

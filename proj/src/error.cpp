#include "freejac/error.hpp"

namespace freejac {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::syntax_error: return "syntax_error";
        case ErrorCode::unknown_identifier: return "unknown_identifier";
        case ErrorCode::bad_exponent: return "bad_exponent";
        case ErrorCode::empty_tuple: return "empty_tuple";
        case ErrorCode::variable_mismatch: return "variable_mismatch";
        case ErrorCode::arity_mismatch: return "arity_mismatch";
        case ErrorCode::shape_mismatch: return "shape_mismatch";
        case ErrorCode::ill_conditioned: return "ill_conditioned";
        case ErrorCode::near_singular_pencil: return "near_singular_pencil";
        case ErrorCode::domain_unsatisfiable: return "domain_unsatisfiable";
        case ErrorCode::witness_invalid: return "witness_invalid";
        case ErrorCode::collision_invalid: return "collision_invalid";
        case ErrorCode::constant_term: return "constant_term";
        case ErrorCode::singular_linear_part: return "singular_linear_part";
        case ErrorCode::singular_derivative: return "singular_derivative";
        case ErrorCode::max_iter_exceeded: return "max_iter_exceeded";
        case ErrorCode::io_error: return "io_error";
        case ErrorCode::invalid_argument: return "invalid_argument";
    }
    return "unknown";
}

nlohmann::json Error::to_json() const {
    nlohmann::json err{{"code", to_string(code_)}, {"message", what()}};
    if (!data_.is_null()) err["data"] = data_;
    return nlohmann::json{{"error", err}};
}

}  // namespace freejac

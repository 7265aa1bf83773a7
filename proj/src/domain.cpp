#include "freejac/domain.hpp"

#include <cmath>
#include <limits>

#include "freejac/error.hpp"

namespace freejac {

namespace {

double min_rotated_real_part(const Eigen::MatrixXcd& m, double rotation) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, /*computeEigenvectors=*/false);
    const std::complex<double> phase = std::polar(1.0, -rotation);
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        lo = std::min(lo, (phase * es.eigenvalues()(i)).real());
    }
    return lo;
}

const char* kind_name(DomainConstraint::Kind k) {
    switch (k) {
        case DomainConstraint::Kind::norm_bound: return "norm_bound";
        case DomainConstraint::Kind::weighted_norm_sum: return "weighted_norm_sum";
        case DomainConstraint::Kind::spectral_halfplane: return "spectral_halfplane";
    }
    return "unknown";
}

DomainConstraint::Kind kind_from_name(const std::string& s) {
    if (s == "norm_bound") return DomainConstraint::Kind::norm_bound;
    if (s == "weighted_norm_sum") return DomainConstraint::Kind::weighted_norm_sum;
    if (s == "spectral_halfplane") return DomainConstraint::Kind::spectral_halfplane;
    throw Error(ErrorCode::invalid_argument, "unknown domain constraint type '" + s + "'");
}

}  // namespace

bool DomainConstraint::satisfied(const MatrixTuple& x) const {
    switch (kind) {
        case Kind::norm_bound:
            return op_norm(x.mats.at(var)) < bound;
        case Kind::weighted_norm_sum: {
            double s = 0.0;
            for (int i = 0; i < x.count(); ++i) {
                double w = i < static_cast<int>(weights.size()) ? weights[i] : 0.0;
                if (w != 0.0) s += w * op_norm(x.mats[i]);
            }
            return s < bound;
        }
        case Kind::spectral_halfplane:
            return min_rotated_real_part(x.mats.at(var), rotation) > 0.0;
    }
    return false;
}

bool DomainSpec::satisfied(const MatrixTuple& x) const {
    for (const auto& c : constraints) {
        if (!c.satisfied(x)) return false;
    }
    return true;
}

bool DomainSpec::is_free_set() const {
    for (const auto& c : constraints) {
        if (c.kind == DomainConstraint::Kind::weighted_norm_sum) return false;
    }
    return true;
}

void DomainSpec::validate(int num_vars) const {
    for (const auto& c : constraints) {
        switch (c.kind) {
            case DomainConstraint::Kind::norm_bound:
                if (c.bound <= 0.0) {
                    throw Error(ErrorCode::invalid_argument, "norm bound must be positive");
                }
                [[fallthrough]];
            case DomainConstraint::Kind::spectral_halfplane:
                if (c.var < 0 || c.var >= num_vars) {
                    throw Error(ErrorCode::invalid_argument,
                                "domain constraint variable index out of range");
                }
                break;
            case DomainConstraint::Kind::weighted_norm_sum: {
                if (c.bound <= 0.0) {
                    throw Error(ErrorCode::invalid_argument, "norm-sum bound must be positive");
                }
                if (static_cast<int>(c.weights.size()) != num_vars) {
                    throw Error(ErrorCode::invalid_argument,
                                "weighted norm sum needs one weight per variable");
                }
                bool positive = false;
                for (double w : c.weights) {
                    if (w < 0.0) {
                        throw Error(ErrorCode::invalid_argument, "weights must be nonnegative");
                    }
                    positive = positive || w > 0.0;
                }
                if (!positive) {
                    throw Error(ErrorCode::invalid_argument,
                                "weighted norm sum needs at least one positive weight");
                }
                break;
            }
        }
    }
}

nlohmann::json DomainSpec::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : constraints) {
        nlohmann::json jc{{"type", kind_name(c.kind)}};
        switch (c.kind) {
            case DomainConstraint::Kind::norm_bound:
                jc["var"] = c.var;
                jc["bound"] = c.bound;
                break;
            case DomainConstraint::Kind::weighted_norm_sum:
                jc["weights"] = c.weights;
                jc["bound"] = c.bound;
                break;
            case DomainConstraint::Kind::spectral_halfplane:
                jc["var"] = c.var;
                jc["rotation"] = c.rotation;
                break;
        }
        arr.push_back(std::move(jc));
    }
    return nlohmann::json{{"constraints", std::move(arr)}};
}

DomainSpec DomainSpec::from_json(const nlohmann::json& j) {
    DomainSpec spec;
    if (j.is_null()) return spec;
    const nlohmann::json& arr = j.is_array() ? j : j.at("constraints");
    for (const auto& jc : arr) {
        DomainConstraint c;
        c.kind = kind_from_name(jc.at("type").get<std::string>());
        switch (c.kind) {
            case DomainConstraint::Kind::norm_bound:
                c.var = jc.at("var").get<int>();
                c.bound = jc.at("bound").get<double>();
                break;
            case DomainConstraint::Kind::weighted_norm_sum:
                c.weights = jc.at("weights").get<std::vector<double>>();
                c.bound = jc.at("bound").get<double>();
                break;
            case DomainConstraint::Kind::spectral_halfplane:
                c.var = jc.at("var").get<int>();
                c.rotation = jc.value("rotation", 0.0);
                break;
        }
        spec.constraints.push_back(std::move(c));
    }
    return spec;
}

}  // namespace freejac

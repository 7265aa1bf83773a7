#include "freejac/sample.hpp"

#include <cmath>
#include <limits>

#include "freejac/error.hpp"

namespace freejac {

namespace {

constexpr int kMaxAttempts = 1000;
constexpr double kHalfplaneMargin = 0.1;

Eigen::MatrixXcd draw(std::mt19937_64& rng, int n, Distribution dist) {
    Eigen::MatrixXcd g = ginibre(rng, n);
    if (dist == Distribution::hermitian_ginibre) {
        return (g + g.adjoint()) / 2.0;
    }
    return g;
}

/// Shift the spectrum of m (rotated by the half-plane angle) strictly into
/// the right half-plane: with a = min Re(e^{-i rot} spec), adding
/// (|a| + margin) * e^{i rot} * I moves every eigenvalue's rotated real part
/// to at least margin.
Eigen::MatrixXcd shift_into_halfplane(const Eigen::MatrixXcd& m, double rotation) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    const std::complex<double> phase = std::polar(1.0, -rotation);
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        lo = std::min(lo, (phase * es.eigenvalues()(i)).real());
    }
    const double shift = std::abs(lo) + kHalfplaneMargin;
    return m + std::polar(shift, rotation) * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
}

/// Repairs a freshly drawn tuple in place. Returns false when the tuple must
/// be redrawn (repairs for one constraint can violate another).
bool repair(MatrixTuple& x, const DomainSpec& domain, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> shrink(0.1, 0.9);
    for (const auto& c : domain.constraints) {
        if (c.satisfied(x)) continue;
        switch (c.kind) {
            case DomainConstraint::Kind::norm_bound: {
                const double nrm = op_norm(x.mats.at(c.var));
                if (nrm == 0.0) return false;
                x.mats[c.var] *= shrink(rng) * c.bound / nrm;
                break;
            }
            case DomainConstraint::Kind::weighted_norm_sum: {
                double s = 0.0;
                for (int i = 0; i < x.count(); ++i) {
                    double w = i < static_cast<int>(c.weights.size()) ? c.weights[i] : 0.0;
                    if (w != 0.0) s += w * op_norm(x.mats[i]);
                }
                if (s == 0.0) return false;
                const double t = shrink(rng) * c.bound / s;
                for (auto& m : x.mats) m *= t;
                break;
            }
            case DomainConstraint::Kind::spectral_halfplane:
                x.mats.at(c.var) = shift_into_halfplane(x.mats.at(c.var), c.rotation);
                break;
        }
    }
    return domain.satisfied(x);
}

}  // namespace

Eigen::MatrixXcd ginibre(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(2.0 * n);  // complex variance 1/n
    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(r, c) = std::complex<double>(re * scale, im * scale);
        }
    }
    return m;
}

std::vector<MatrixTuple> sample_tuples(const SampleConfig& cfg, int num_vars) {
    if (cfg.size < 1 || cfg.count < 1 || num_vars < 1) {
        throw Error(ErrorCode::invalid_argument, "sample config needs n >= 1 and count >= 1");
    }
    if (cfg.domain) cfg.domain->validate(num_vars);
    std::mt19937_64 rng(cfg.seed);
    std::vector<MatrixTuple> out;
    out.reserve(cfg.count);
    for (int k = 0; k < cfg.count; ++k) {
        bool accepted = false;
        for (int attempt = 0; attempt < kMaxAttempts && !accepted; ++attempt) {
            std::vector<Eigen::MatrixXcd> ms;
            ms.reserve(num_vars);
            for (int i = 0; i < num_vars; ++i) ms.push_back(draw(rng, cfg.size, cfg.distribution));
            MatrixTuple x(std::move(ms));
            if (!cfg.domain || repair(x, *cfg.domain, rng)) {
                out.push_back(std::move(x));
                accepted = true;
            }
        }
        if (!accepted) {
            throw Error(ErrorCode::domain_unsatisfiable,
                        "no sample satisfied the domain after " +
                            std::to_string(kMaxAttempts) + " attempts");
        }
    }
    return out;
}

MatrixTuple sample_commuting_tuple(int size, int num_vars, std::uint64_t seed) {
    if (size < 1 || num_vars < 1) {
        throw Error(ErrorCode::invalid_argument, "commuting sampler needs n >= 1 and N >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const Eigen::MatrixXcd t = ginibre(rng, size);
    const Eigen::MatrixXcd t2 = t * t;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(size, size);
    std::vector<Eigen::MatrixXcd> ms;
    ms.reserve(num_vars);
    for (int i = 0; i < num_vars; ++i) {
        auto coeff = [&] { return std::complex<double>(normal(rng), normal(rng)); };
        ms.push_back(coeff() * id + coeff() * t + coeff() * t2);
    }
    return MatrixTuple(std::move(ms));
}

}  // namespace freejac

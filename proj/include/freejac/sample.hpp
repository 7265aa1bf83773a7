#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "freejac/domain.hpp"
#include "freejac/matrix_tuple.hpp"

namespace freejac {

enum class Distribution { ginibre, hermitian_ginibre };

struct SampleConfig {
    int size = 2;         ///< matrix size n
    int count = 1;        ///< tuples per batch
    std::uint64_t seed = 0;
    Distribution distribution = Distribution::ginibre;
    std::optional<DomainSpec> domain;
};

/// One matrix with iid standard complex normal entries scaled by 1/sqrt(n),
/// so the spectral radius stays O(1) across sizes.
Eigen::MatrixXcd ginibre(std::mt19937_64& rng, int n);

/// A batch of cfg.count tuples of num_vars matrices, deterministic per seed.
/// Tuples violating the domain are repaired: norm constraints rescale the
/// offending matrices (a common factor for weighted sums), spectral
/// constraints shift the spectrum into the half-plane. A tuple that still
/// violates the domain is rejected and redrawn, up to 1000 attempts each.
std::vector<MatrixTuple> sample_tuples(const SampleConfig& cfg, int num_vars);

/// A commuting tuple: low-degree polynomials p_1(T), ..., p_N(T) of a single
/// Ginibre matrix T, so all pairwise commutators vanish by construction.
MatrixTuple sample_commuting_tuple(int size, int num_vars, std::uint64_t seed);

}  // namespace freejac

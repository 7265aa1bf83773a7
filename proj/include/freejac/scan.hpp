#pragma once

#include <string>
#include <vector>

#include "freejac/sample.hpp"
#include "freejac/witness.hpp"

namespace freejac {

/// Every singular verdict re-verified through the jet route must come in
/// under this multiple of the witness scale.
inline constexpr double kScanReverifyTol = 1e-7;

struct ScanHit {
    KernelWitness witness;
    double sigma_min = 0.0;
    bool reverified = false;

    nlohmann::json to_json() const;
};

struct ScanSizeRecord {
    int n = 0;
    int samples = 0;
    double min_sigma_min = 0.0;
    std::string argmin_digest;
    std::vector<ScanHit> hits;

    nlohmann::json to_json() const;
};

/// Sampled evidence for derivative nonsingularity over a domain: per size,
/// every sampled tuple's derivative is certified, the smallest singular value
/// seen is recorded, and singular verdicts become kernel witnesses.
struct ScanReport {
    std::string map_digest;
    std::uint64_t seed = 0;
    DomainSpec domain;
    bool domain_free = true;  ///< false when the domain is not closed under direct sums
    std::vector<ScanSizeRecord> sizes;
    int total_hits = 0;

    nlohmann::json to_json() const;
};

/// Runs the scan. Planted tuples are appended to the sampled batch of their
/// size. Samples are drawn sequentially per (seed, size); certification may
/// run in parallel (FREEJAC_THREADS) with results merged by index, so the
/// report is deterministic either way.
ScanReport jacobian_scan(const FreePolyMap& p, const DomainSpec& domain,
                         const std::vector<int>& sizes, const SampleConfig& cfg,
                         const std::vector<MatrixTuple>& planted = {});

}  // namespace freejac

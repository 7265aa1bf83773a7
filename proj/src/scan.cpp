#include "freejac/scan.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

#include "freejac/digest.hpp"
#include "freejac/error.hpp"
#include "freejac/linearize.hpp"

namespace freejac {

namespace {

int thread_budget() {
    if (const char* env = std::getenv("FREEJAC_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

/// Runs fn(i) for i in [0, count) across at most `threads` workers; each
/// index writes only its own slot, so the merge order is fixed.
void indexed_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct SampleOutcome {
    double sigma_min = 0.0;
    bool singular = false;
    std::optional<MatrixTuple> kernel;
};

}  // namespace

nlohmann::json ScanHit::to_json() const {
    nlohmann::json j = witness.to_json();
    j["sigma_min"] = sigma_min;
    j["reverified"] = reverified;
    return j;
}

nlohmann::json ScanSizeRecord::to_json() const {
    nlohmann::json jh = nlohmann::json::array();
    for (const auto& h : hits) jh.push_back(h.to_json());
    return nlohmann::json{{"n", n},
                          {"samples", samples},
                          {"min_sigma_min", min_sigma_min},
                          {"argmin_digest", argmin_digest},
                          {"hits", std::move(jh)}};
}

nlohmann::json ScanReport::to_json() const {
    nlohmann::json js = nlohmann::json::array();
    for (const auto& s : sizes) js.push_back(s.to_json());
    return nlohmann::json{{"map_digest", map_digest},
                          {"seed", seed},
                          {"domain", domain.to_json()},
                          {"domain_free", domain_free},
                          {"sizes", std::move(js)},
                          {"total_hits", total_hits},
                          {"evidence", "sampled at the listed sizes only; not a proof"}};
}

ScanReport jacobian_scan(const FreePolyMap& p, const DomainSpec& domain,
                         const std::vector<int>& sizes, const SampleConfig& cfg,
                         const std::vector<MatrixTuple>& planted) {
    if (sizes.empty()) {
        throw Error(ErrorCode::invalid_argument, "the scan needs at least one matrix size");
    }
    domain.validate(p.num_vars);
    for (const auto& extra : planted) {
        if (extra.count() != p.num_vars) {
            throw Error(ErrorCode::variable_mismatch,
                        "planted tuples must match the map's variable count");
        }
        if (std::find(sizes.begin(), sizes.end(), extra.size()) == sizes.end()) {
            throw Error(ErrorCode::shape_mismatch,
                        "planted tuple of size " + std::to_string(extra.size()) +
                            " matches none of the scanned sizes");
        }
    }

    ScanReport report;
    report.map_digest = digest(p);
    report.seed = cfg.seed;
    report.domain = domain;
    report.domain_free = domain.is_free_set();

    const int threads = thread_budget();
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const int n = sizes[si];
        SampleConfig per_size = cfg;
        per_size.size = n;
        per_size.domain = domain;
        // decorrelate the per-size streams while keeping them seed-determined
        per_size.seed = cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(si);
        std::vector<MatrixTuple> batch = sample_tuples(per_size, p.num_vars);
        for (const auto& extra : planted) {
            if (extra.size() == n) batch.push_back(extra);
        }

        std::vector<SampleOutcome> outcomes(batch.size());
        indexed_for(static_cast<int>(batch.size()), threads, [&](int i) {
            SingularityCertificate cert =
                singularity_certificate(derivative_matrix(p, batch[i]));
            outcomes[i].sigma_min = cert.sigma_min;
            outcomes[i].singular = cert.singular();
            if (cert.singular()) outcomes[i].kernel = std::move(cert.kernel);
        });

        ScanSizeRecord rec;
        rec.n = n;
        rec.samples = static_cast<int>(batch.size());
        rec.min_sigma_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (outcomes[i].sigma_min < rec.min_sigma_min) {
                rec.min_sigma_min = outcomes[i].sigma_min;
                rec.argmin_digest = digest(batch[i]);
            }
            if (outcomes[i].singular && outcomes[i].kernel) {
                ScanHit hit;
                hit.sigma_min = outcomes[i].sigma_min;
                hit.witness.x = batch[i];
                hit.witness.h = *outcomes[i].kernel;
                const double hnorm = hit.witness.h.norm();
                hit.witness.residual =
                    hnorm > 0.0
                        ? jet_eval(p, hit.witness.x, hit.witness.h).derivative.norm() / hnorm
                        : 0.0;
                hit.reverified =
                    hnorm > 0.0 &&
                    hit.witness.residual <= kScanReverifyTol * witness_scale(p, hit.witness.x);
                rec.hits.push_back(std::move(hit));
            }
        }
        report.total_hits += static_cast<int>(rec.hits.size());
        report.sizes.push_back(std::move(rec));
    }
    return report;
}

}  // namespace freejac

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sgrid/dataset.hpp"
#include "sgrid/estimator.hpp"
#include "sgrid/scoring.hpp"
#include "sgrid/subspace.hpp"

namespace sgrid {

struct MinerConfig {
    int max_depth = 5;
    int beam_width = 100;
    int top_k = 10;
    EstimatorKind estimator = EstimatorKind::sgrid;
    std::optional<double> tau;  // optional post-filter: keep only z < tau
    int block_size = 64;
};

/// Throws ConfigError if the configuration cannot run against d attributes.
void validate_config(const MinerConfig& cfg, int d);

struct ScoredSubspace {
    Subspace subspace;
    double z = 0;

    bool operator==(const ScoredSubspace&) const = default;
};

/// Ranking order used everywhere: ascending z (lower = more outlying), then
/// fewer attributes, then lexicographic attribute ids.
bool outranks(const ScoredSubspace& a, const ScoredSubspace& b);

struct SearchStats {
    std::uint64_t subspaces_scored = 0;  // z-score evaluations (post-dedup)
    std::uint64_t stats_computed = 0;    // subspace_stats runs (cache misses)
    std::uint64_t cache_hits = 0;
};

/// Final beam contents per level, for auditing the search structure.
/// levels[l] is the list the level-(l+1) expansion read from.
struct SearchTrace {
    std::vector<std::pair<int, std::vector<Subspace>>> levels;
};

/// Beam search over subspaces for one query point.
///
/// All 1- and 2-attribute subspaces are scored exhaustively; the result set
/// keeps the best top_k of everything scored, and the level-2 beam keeps the
/// best beam_width 2-attribute subspaces. Each further level expands every
/// beam member with every unused attribute, skipping subspaces already seen
/// anywhere in this search. Results come back best-first.
std::vector<ScoredSubspace> beam_search(const Estimator& est, std::span<const double> query,
                                        const MinerConfig& cfg, ScoreCache* cache,
                                        SearchStats* stats = nullptr,
                                        SearchTrace* trace = nullptr);

/// Convenience overload that builds the configured estimator first.
std::vector<ScoredSubspace> beam_search(const Dataset& ds, std::span<const double> query,
                                        const MinerConfig& cfg, ScoreCache* cache);

struct MineOutcome {
    std::vector<std::vector<ScoredSubspace>> per_query;
    SearchStats stats;
    double build_ms = 0;
    double search_ms = 0;
};

/// Mines every listed record as a query against one shared estimator index
/// and (optionally) one shared score cache. jobs > 1 runs queries on that
/// many threads; per-query results are the same either way.
MineOutcome mine_queries(const Dataset& ds, const std::vector<int>& record_ids,
                         const MinerConfig& cfg, bool use_cache = true, int jobs = 1);

/// Same, against a caller-owned estimator and cache.
std::vector<std::vector<ScoredSubspace>> mine_with_estimator(
    const Estimator& est, const Dataset& ds, const std::vector<int>& record_ids,
    const MinerConfig& cfg, ScoreCache* cache, SearchStats* stats = nullptr, int jobs = 1);

}  // namespace sgrid

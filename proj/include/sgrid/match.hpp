#pragma once

#include <map>
#include <vector>

#include "sgrid/miner.hpp"
#include "sgrid/synth.hpp"

namespace sgrid {

struct QueryMatch {
    int id = 0;
    double exact = 0;  // fraction of this query's ground truths found exactly
    double any = 0;    // exact plus strict subset/superset credit
};

struct MatchReport {
    double exact_matches = 0;
    double matches = 0;  // includes the exact ones
    std::vector<QueryMatch> per_query;
};

/// Scores mined subspaces against planted ground truth. A query with g
/// ground-truth subspaces awards 1/g per truth found exactly anywhere in its
/// result list; a truth not found exactly still earns 1/g toward `matches`
/// when some returned subspace is a strict subset or superset of it.
/// Per-query totals are capped at 1. Every query id must appear in gt.
MatchReport score_matches(const std::map<int, std::vector<ScoredSubspace>>& results,
                          const GroundTruth& gt);

}  // namespace sgrid

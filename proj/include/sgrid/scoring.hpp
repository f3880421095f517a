#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "sgrid/estimator.hpp"
#include "sgrid/subspace.hpp"

namespace sgrid {

/// Mean and population standard deviation of the base score over all n
/// records of the dataset in one subspace, under one estimator.
struct SubspaceScoreStats {
    double mean = 0;
    double stddev = 0;
    EstimatorKind tag = EstimatorKind::sgrid;
};

SubspaceScoreStats subspace_stats(const Estimator& est, const Subspace& s);

/// (base_value - mean) / stddev, ascending = more outlying. A zero-stddev
/// subspace carries no signal and scores 0 for every value.
inline double z_score(const SubspaceScoreStats& st, double base_value) {
    if (st.stddev <= 0) return 0.0;
    return (base_value - st.mean) / st.stddev;
}

/// Memoized (mean, stddev) per canonical subspace and estimator tag, shared
/// across queries. Reads take a shared lock; insertion is exclusive and
/// idempotent, so two workers racing on the same key are harmless.
class ScoreCache {
public:
    std::optional<SubspaceScoreStats> lookup(EstimatorKind tag, const Subspace& s) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(Key{tag, s});
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void store(EstimatorKind tag, const Subspace& s, const SubspaceScoreStats& st) {
        std::unique_lock lock(mu_);
        map_.emplace(Key{tag, s}, st);
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

private:
    struct Key {
        EstimatorKind tag;
        Subspace s;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return SubspaceHash{}(k.s) * 1315423911u ^ static_cast<std::size_t>(k.tag);
        }
    };

    mutable std::shared_mutex mu_;
    std::unordered_map<Key, SubspaceScoreStats, KeyHash> map_;
};

}  // namespace sgrid

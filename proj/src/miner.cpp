#include "sgrid/miner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "sgrid/errors.hpp"

namespace sgrid {

void validate_config(const MinerConfig& cfg, int d) {
    if (cfg.max_depth < 2)
        throw ConfigError("search depth must be at least 2 (got " +
                          std::to_string(cfg.max_depth) + ")");
    if (cfg.max_depth > d)
        throw ConfigError("search depth " + std::to_string(cfg.max_depth) +
                          " exceeds attribute count " + std::to_string(d));
    if (cfg.beam_width < 1) throw ConfigError("beam width must be positive");
    if (cfg.top_k < 1) throw ConfigError("top-k must be positive");
    if (cfg.block_size != 8 && cfg.block_size != 16 && cfg.block_size != 32 &&
        cfg.block_size != 64)
        throw ConfigError("block size must be 8, 16, 32 or 64");
}

bool outranks(const ScoredSubspace& a, const ScoredSubspace& b) {
    if (a.z != b.z) return a.z < b.z;
    if (a.subspace.size() != b.subspace.size()) return a.subspace.size() < b.subspace.size();
    return a.subspace.attrs() < b.subspace.attrs();
}

namespace {

// Bounded best-list kept sorted ascending (best first). A full list only
// admits a candidate that outranks the current worst.
class TopSet {
public:
    explicit TopSet(std::size_t cap) : cap_(cap) {}

    void offer(const ScoredSubspace& c) {
        if (items_.size() == cap_) {
            if (!outranks(c, items_.back())) return;
            items_.pop_back();
        }
        auto pos = std::upper_bound(items_.begin(), items_.end(), c, outranks);
        items_.insert(pos, c);
    }

    const std::vector<ScoredSubspace>& items() const { return items_; }
    std::vector<ScoredSubspace> take() { return std::move(items_); }

private:
    std::size_t cap_;
    std::vector<ScoredSubspace> items_;
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

std::vector<ScoredSubspace> beam_search(const Estimator& est, std::span<const double> query,
                                        const MinerConfig& cfg, ScoreCache* cache,
                                        SearchStats* stats, SearchTrace* trace) {
    validate_config(cfg, est.dims());

    std::vector<int> pool;
    for (int a = 0; a < est.dims(); ++a)
        if (est.attribute_usable(a)) pool.push_back(a);

    SearchStats local;
    SearchStats& st = stats ? *stats : local;

    auto z_of = [&](const Subspace& s) {
        SubspaceScoreStats sstats;
        if (cache) {
            if (auto hit = cache->lookup(est.kind(), s)) {
                ++st.cache_hits;
                sstats = *hit;
            } else {
                sstats = subspace_stats(est, s);
                ++st.stats_computed;
                cache->store(est.kind(), s, sstats);
            }
        } else {
            sstats = subspace_stats(est, s);
            ++st.stats_computed;
        }
        ++st.subspaces_scored;
        return z_score(sstats, est.score(s, query));
    };

    TopSet result(static_cast<std::size_t>(cfg.top_k));
    std::unordered_set<Subspace, SubspaceHash> visited;

    // Sizes 1 and 2 are enumerated exhaustively; both compete for the result
    // set, but only 2-attribute subspaces seed the beam.
    TopSet beam(static_cast<std::size_t>(cfg.beam_width));
    for (std::size_t i = 0; i < pool.size(); ++i) {
        Subspace s = Subspace::single(pool[i]);
        visited.insert(s);
        result.offer({s, z_of(s)});
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            Subspace s(std::vector<int>{pool[i], pool[j]});
            visited.insert(s);
            const double z = z_of(s);
            result.offer({s, z});
            beam.offer({s, z});
        }
    }

    for (int level = 3; level <= cfg.max_depth; ++level) {
        if (trace) {
            std::vector<Subspace> snapshot;
            for (const auto& e : beam.items()) snapshot.push_back(e.subspace);
            trace->levels.emplace_back(level - 1, std::move(snapshot));
        }
        if (beam.items().empty()) break;
        TopSet next(static_cast<std::size_t>(cfg.beam_width));
        for (const ScoredSubspace& parent : beam.items()) {
            for (int a : pool) {
                if (parent.subspace.contains(a)) continue;
                Subspace c = parent.subspace.with(a);
                if (!visited.insert(c).second) continue;
                const double z = z_of(c);
                result.offer({c, z});
                next.offer({c, z});
            }
        }
        beam = std::move(next);
    }

    std::vector<ScoredSubspace> out = result.take();
    if (cfg.tau) {
        std::erase_if(out, [&](const ScoredSubspace& e) { return e.z >= *cfg.tau; });
    }
    return out;
}

std::vector<ScoredSubspace> beam_search(const Dataset& ds, std::span<const double> query,
                                        const MinerConfig& cfg, ScoreCache* cache) {
    auto est = build_estimator(ds, cfg.estimator, cfg.block_size);
    return beam_search(*est, query, cfg, cache);
}

std::vector<std::vector<ScoredSubspace>> mine_with_estimator(
    const Estimator& est, const Dataset& ds, const std::vector<int>& record_ids,
    const MinerConfig& cfg, ScoreCache* cache, SearchStats* stats, int jobs) {
    for (int id : record_ids)
        if (id < 0 || id >= ds.n())
            throw ConfigError("query record id " + std::to_string(id) + " out of range [0, " +
                              std::to_string(ds.n()) + ")");

    std::vector<std::vector<ScoredSubspace>> results(record_ids.size());
    if (jobs <= 1 || record_ids.size() <= 1) {
        for (std::size_t i = 0; i < record_ids.size(); ++i) {
            const std::vector<double> q = ds.row(record_ids[i]);
            results[i] = beam_search(est, q, cfg, cache, stats);
        }
        return results;
    }

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                                      record_ids.size());
    std::atomic<std::size_t> cursor{0};
    std::vector<SearchStats> worker_stats(workers);
    std::vector<std::thread> threads;
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mu;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            while (!failed.load()) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= record_ids.size()) break;
                try {
                    const std::vector<double> q = ds.row(record_ids[i]);
                    results[i] = beam_search(est, q, cfg, cache, &worker_stats[w]);
                } catch (...) {
                    std::lock_guard lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
    if (stats) {
        for (const auto& ws : worker_stats) {
            stats->subspaces_scored += ws.subspaces_scored;
            stats->stats_computed += ws.stats_computed;
            stats->cache_hits += ws.cache_hits;
        }
    }
    return results;
}

MineOutcome mine_queries(const Dataset& ds, const std::vector<int>& record_ids,
                         const MinerConfig& cfg, bool use_cache, int jobs) {
    validate_config(cfg, ds.d());

    MineOutcome out;
    auto t0 = std::chrono::steady_clock::now();
    auto est = build_estimator(ds, cfg.estimator, cfg.block_size);
    out.build_ms = elapsed_ms(t0);

    ScoreCache cache;
    auto t1 = std::chrono::steady_clock::now();
    out.per_query = mine_with_estimator(*est, ds, record_ids, cfg,
                                        use_cache ? &cache : nullptr, &out.stats, jobs);
    out.search_ms = elapsed_ms(t1);
    return out;
}

}  // namespace sgrid

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "sgrid/errors.hpp"
#include "sgrid/miner.hpp"
#include "test_util.hpp"

using namespace sgrid;

namespace {

// Exhaustive reference: score every non-empty subspace of size <= depth,
// order with the same ranking rule, truncate to top_k.
std::vector<ScoredSubspace> exhaustive_oracle(const Estimator& est,
                                              const std::vector<double>& q,
                                              const MinerConfig& cfg) {
    std::vector<int> pool;
    for (int a = 0; a < est.dims(); ++a)
        if (est.attribute_usable(a)) pool.push_back(a);

    std::vector<ScoredSubspace> all;
    const int d = static_cast<int>(pool.size());
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        if (std::popcount(mask) > cfg.max_depth) continue;
        std::vector<int> attrs;
        for (int a = 0; a < d; ++a)
            if (mask & (1u << a)) attrs.push_back(pool[static_cast<std::size_t>(a)]);
        Subspace s(attrs);
        SubspaceScoreStats st = subspace_stats(est, s);
        all.push_back({s, z_score(st, est.score(s, q))});
    }
    std::sort(all.begin(), all.end(), outranks);
    if (all.size() > static_cast<std::size_t>(cfg.top_k))
        all.resize(static_cast<std::size_t>(cfg.top_k));
    if (cfg.tau)
        std::erase_if(all, [&](const ScoredSubspace& e) { return e.z >= *cfg.tau; });
    return all;
}

}  // namespace

TEST_CASE("three attributes, full depth: all seven subspaces in oracle order") {
    std::mt19937_64 rng(79);
    Dataset ds = testutil::random_dataset(rng, 50, 3);
    auto est = build_estimator(ds, EstimatorKind::sgrid);

    MinerConfig cfg;
    cfg.max_depth = 3;
    cfg.beam_width = 3;
    cfg.top_k = 7;

    const std::vector<double> q = ds.row(4);
    auto result = beam_search(*est, q, cfg, nullptr);
    auto oracle = exhaustive_oracle(*est, q, cfg);
    REQUIRE(result.size() == 7);
    CHECK(result == oracle);
}

TEST_CASE("two attributes: seeding is the whole search") {
    std::mt19937_64 rng(83);
    Dataset ds = testutil::random_dataset(rng, 40, 2);
    auto est = build_estimator(ds, EstimatorKind::sgrid);

    MinerConfig cfg;
    cfg.max_depth = 2;
    cfg.beam_width = 10;
    cfg.top_k = 10;

    SearchStats stats;
    SearchTrace trace;
    const std::vector<double> q = ds.row(0);
    auto result = beam_search(*est, q, cfg, nullptr, &stats, &trace);
    CHECK(result.size() == 3);  // {0}, {1}, {0,1}
    CHECK(stats.subspaces_scored == 3);
    CHECK(trace.levels.empty());  // no level-3 expansion ran

    std::set<Subspace> seen;
    for (const auto& r : result) seen.insert(r.subspace);
    CHECK(seen == std::set<Subspace>{Subspace({0}), Subspace({1}), Subspace({0, 1})});
}

TEST_CASE("wide beam equals the exhaustive oracle") {
    std::mt19937_64 rng(89);
    for (int rep = 0; rep < 12; ++rep) {
        const int d = 3 + static_cast<int>(rng() % 4);  // 3..6
        const int n = 30 + static_cast<int>(rng() % 120);
        Dataset ds = testutil::random_dataset(rng, n, d);

        MinerConfig cfg;
        cfg.max_depth = d;
        cfg.beam_width = 1 << d;  // no level ever truncates
        cfg.top_k = 10;
        cfg.estimator = rep % 2 ? EstimatorKind::grid : EstimatorKind::sgrid;

        auto est = build_estimator(ds, cfg.estimator);
        const std::vector<double> q = ds.row(static_cast<int>(rng() % static_cast<std::size_t>(n)));
        auto result = beam_search(*est, q, cfg, nullptr);
        auto oracle = exhaustive_oracle(*est, q, cfg);
        CHECK(result == oracle);
    }
}

TEST_CASE("results are distinct and sorted ascending by z") {
    std::mt19937_64 rng(97);
    Dataset ds = testutil::random_dataset(rng, 150, 8);
    MinerConfig cfg;
    cfg.max_depth = 4;
    cfg.beam_width = 6;
    cfg.top_k = 12;
    auto est = build_estimator(ds, cfg.estimator);

    const std::vector<double> q = ds.row(3);
    auto result = beam_search(*est, q, cfg, nullptr);
    REQUIRE(!result.empty());
    std::set<Subspace> seen;
    for (std::size_t i = 0; i < result.size(); ++i) {
        CHECK(seen.insert(result[i].subspace).second);
        if (i) CHECK(result[i - 1].z <= result[i].z);
    }
}

TEST_CASE("level expansion only grows beam members") {
    std::mt19937_64 rng(101);
    Dataset ds = testutil::random_dataset(rng, 100, 7);
    MinerConfig cfg;
    cfg.max_depth = 5;
    cfg.beam_width = 4;
    cfg.top_k = 15;
    auto est = build_estimator(ds, cfg.estimator);

    SearchTrace trace;
    const std::vector<double> q = ds.row(11);
    auto result = beam_search(*est, q, cfg, nullptr, nullptr, &trace);

    // every returned subspace of size l >= 3 extends something that was in
    // the beam at level l-1
    for (const auto& r : result) {
        const int l = r.subspace.size();
        if (l < 3) continue;
        const auto it = std::find_if(trace.levels.begin(), trace.levels.end(),
                                     [&](const auto& lv) { return lv.first == l - 1; });
        REQUIRE(it != trace.levels.end());
        bool has_parent = false;
        for (const auto& parent : it->second) {
            if (parent.size() != l - 1) continue;
            bool subset = std::includes(r.subspace.attrs().begin(), r.subspace.attrs().end(),
                                        parent.attrs().begin(), parent.attrs().end());
            if (subset) {
                has_parent = true;
                break;
            }
        }
        CHECK(has_parent);
    }
}

TEST_CASE("tau drops weakly scored subspaces") {
    std::mt19937_64 rng(103);
    Dataset ds = testutil::random_dataset(rng, 80, 4);
    MinerConfig cfg;
    cfg.max_depth = 3;
    cfg.beam_width = 10;
    cfg.top_k = 15;
    auto est = build_estimator(ds, cfg.estimator);
    const std::vector<double> q = ds.row(0);

    auto unfiltered = beam_search(*est, q, cfg, nullptr);
    REQUIRE(!unfiltered.empty());
    const double cut = unfiltered[unfiltered.size() / 2].z;
    cfg.tau = cut;
    auto filtered = beam_search(*est, q, cfg, nullptr);
    for (const auto& r : filtered) CHECK(r.z < cut);
    for (const auto& r : unfiltered)
        if (r.z < cut)
            CHECK(std::find(filtered.begin(), filtered.end(), r) != filtered.end());
}

TEST_CASE("candidate generation does not depend on the estimator") {
    std::mt19937_64 rng(107);
    Dataset ds = testutil::random_dataset(rng, 60, 5);
    MinerConfig cfg;
    cfg.max_depth = 4;
    cfg.beam_width = 1 << 5;  // unbounded: every estimator visits everything
    cfg.top_k = 5;

    std::uint64_t expected = 0;  // C(5,1)+C(5,2)+C(5,3)+C(5,4)
    for (unsigned mask = 1; mask < 32; ++mask)
        if (std::popcount(mask) <= 4) ++expected;

    for (EstimatorKind kind : {EstimatorKind::sgrid, EstimatorKind::grid, EstimatorKind::kde}) {
        cfg.estimator = kind;
        auto est = build_estimator(ds, kind);
        SearchStats stats;
        const std::vector<double> q = ds.row(9);
        beam_search(*est, q, cfg, nullptr, &stats);
        CHECK(stats.subspaces_scored == expected);
    }
}

TEST_CASE("same query mined twice gives identical results") {
    std::mt19937_64 rng(109);
    Dataset ds = testutil::random_dataset(rng, 90, 6);
    MinerConfig cfg;
    cfg.max_depth = 4;
    cfg.beam_width = 8;
    cfg.top_k = 10;

    MineOutcome a = mine_queries(ds, {5, 5}, cfg);
    CHECK(a.per_query[0] == a.per_query[1]);

    MineOutcome b = mine_queries(ds, {5}, cfg);
    CHECK(a.per_query[0] == b.per_query[0]);
}

TEST_CASE("cache changes work done, never results") {
    std::mt19937_64 rng(113);
    Dataset ds = testutil::random_dataset(rng, 100, 6);
    MinerConfig cfg;
    cfg.max_depth = 4;
    cfg.beam_width = 10;
    cfg.top_k = 10;

    const std::vector<int> queries{1, 2, 3};
    MineOutcome with_cache = mine_queries(ds, queries, cfg, /*use_cache=*/true);
    MineOutcome without = mine_queries(ds, queries, cfg, /*use_cache=*/false);

    CHECK(with_cache.per_query == without.per_query);  // bit-identical z-scores
    CHECK(with_cache.stats.stats_computed < without.stats.stats_computed);
    CHECK(with_cache.stats.cache_hits > 0);
    CHECK(without.stats.cache_hits == 0);
}

TEST_CASE("query order does not affect per-query results") {
    std::mt19937_64 rng(139);
    Dataset ds = testutil::random_dataset(rng, 80, 5);
    MinerConfig cfg;
    cfg.max_depth = 4;
    cfg.beam_width = 6;
    cfg.top_k = 8;

    const std::vector<int> fwd{2, 9, 31, 55};
    const std::vector<int> rev{55, 31, 9, 2};
    MineOutcome a = mine_queries(ds, fwd, cfg);
    MineOutcome b = mine_queries(ds, rev, cfg);
    for (std::size_t i = 0; i < fwd.size(); ++i)
        CHECK(a.per_query[i] == b.per_query[fwd.size() - 1 - i]);
}

TEST_CASE("parallel mining matches sequential") {
    std::mt19937_64 rng(127);
    Dataset ds = testutil::random_dataset(rng, 120, 6);
    MinerConfig cfg;
    cfg.max_depth = 3;
    cfg.beam_width = 10;
    cfg.top_k = 8;

    const std::vector<int> queries{0, 7, 19, 42, 88};
    MineOutcome seq = mine_queries(ds, queries, cfg, true, 1);
    MineOutcome par = mine_queries(ds, queries, cfg, true, 4);
    CHECK(seq.per_query == par.per_query);
}

TEST_CASE("config validation") {
    std::mt19937_64 rng(131);
    Dataset ds = testutil::random_dataset(rng, 30, 4);
    MinerConfig cfg;

    cfg.max_depth = 99;
    CHECK_THROWS_AS(mine_queries(ds, {0}, cfg), ConfigError);
    cfg.max_depth = 1;
    CHECK_THROWS_AS(mine_queries(ds, {0}, cfg), ConfigError);
    cfg.max_depth = 3;
    cfg.beam_width = 0;
    CHECK_THROWS_AS(mine_queries(ds, {0}, cfg), ConfigError);
    cfg.beam_width = 5;
    cfg.block_size = 33;
    CHECK_THROWS_AS(mine_queries(ds, {0}, cfg), ConfigError);
    cfg.block_size = 32;
    CHECK_NOTHROW(mine_queries(ds, {0}, cfg));

    CHECK_THROWS_WITH_AS(mine_queries(ds, {0, 77}, cfg), doctest::Contains("77"), ConfigError);
    CHECK_THROWS_AS(mine_queries(ds, {-1}, cfg), ConfigError);
}

TEST_CASE("planted 2-attribute anomaly surfaces in the top-k") {
    // attrs 2 and 3 carry two tight clusters; record 0 sits alone between
    // them in that plane and is ordinary in every other attribute
    std::mt19937_64 rng(137);
    const int n = 400;
    std::vector<std::vector<double>> cols(10, std::vector<double>(n));
    std::normal_distribution<double> g(0.0, 0.5);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    std::uniform_int_distribution<int> side(0, 1);
    for (int i = 0; i < n; ++i) {
        const int cluster = side(rng);
        const double cx = cluster ? 4.0 : 16.0;
        const double cy = cluster ? 4.0 : 16.0;
        cols[2][static_cast<std::size_t>(i)] = cx + g(rng);
        cols[3][static_cast<std::size_t>(i)] = cy + g(rng);
        for (int a : {0, 1, 4, 5, 6, 7, 8, 9})
            cols[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] = u(rng);
    }
    cols[2][0] = 10.0;  // far from both cluster centers in the {2,3} plane
    cols[3][0] = 10.0;
    Dataset ds = Dataset::from_columns(std::move(cols));

    MinerConfig cfg;
    cfg.max_depth = 5;
    cfg.beam_width = 100;
    cfg.top_k = 10;
    MineOutcome out = mine_queries(ds, {0}, cfg);
    bool found = false;
    for (const auto& r : out.per_query[0]) found = found || r.subspace == Subspace({2, 3});
    CHECK(found);
}

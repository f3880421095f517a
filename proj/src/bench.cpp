#include "sgrid/bench.hpp"

#include <sstream>

namespace sgrid {

std::vector<BenchRow> bench_estimators(const Dataset& ds, const std::vector<int>& queries,
                                       const std::vector<MinerConfig>& configs, int repeats) {
    std::vector<BenchRow> rows;
    for (const MinerConfig& cfg : configs) {
        for (int r = 0; r < repeats; ++r) {
            MineOutcome outcome = mine_queries(ds, queries, cfg, /*use_cache=*/true, /*jobs=*/1);
            BenchRow row;
            row.estimator = to_string(cfg.estimator);
            row.n = ds.n();
            row.d = ds.d();
            row.depth = cfg.max_depth;
            row.queries = static_cast<int>(queries.size());
            row.build_ms = outcome.build_ms;
            row.search_ms = outcome.search_ms;
            row.subspaces_scored = outcome.stats.subspaces_scored;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "estimator,n,d,depth,queries,build_ms,search_ms,subspaces_scored\n";
    for (const auto& r : rows) {
        os << r.estimator << ',' << r.n << ',' << r.d << ',' << r.depth << ',' << r.queries
           << ',' << r.build_ms << ',' << r.search_ms << ',' << r.subspaces_scored << '\n';
    }
    return os.str();
}

}  // namespace sgrid

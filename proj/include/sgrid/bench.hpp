#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgrid/dataset.hpp"
#include "sgrid/miner.hpp"

namespace sgrid {

struct BenchRow {
    std::string estimator;
    int n = 0;
    int d = 0;
    int depth = 0;
    int queries = 0;
    double build_ms = 0;
    double search_ms = 0;
    std::uint64_t subspaces_scored = 0;
};

/// Times end-to-end mining of the same query set under each configuration
/// (fresh cache per run, index build reported separately). Configurations
/// are expected to differ only in estimator choice. Runs are sequential so
/// the timings do not interfere. Emits one row per configuration per repeat.
std::vector<BenchRow> bench_estimators(const Dataset& ds, const std::vector<int>& queries,
                                       const std::vector<MinerConfig>& configs,
                                       int repeats = 1);

/// CSV rendering with header: estimator,n,d,depth,queries,build_ms,search_ms,subspaces_scored
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace sgrid

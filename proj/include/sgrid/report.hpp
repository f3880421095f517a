#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgrid/match.hpp"
#include "sgrid/miner.hpp"

namespace sgrid {

struct QueryResult {
    int id = 0;
    std::vector<ScoredSubspace> subspaces;  // best first

    bool operator==(const QueryResult&) const = default;
};

/// Everything a mine/eval run reports: config echo, per-query ranked
/// subspaces, timing breakdown and cache counters. Serializes losslessly to
/// JSON and back; the text rendering is derived from the same data.
struct RunReport {
    std::string command;  // "mine" or "eval"
    std::string data_path;
    MinerConfig config;
    bool cache_enabled = true;
    int jobs = 1;
    std::vector<int> queries;
    std::vector<QueryResult> results;
    double ingest_ms = 0;
    double build_ms = 0;
    double search_ms = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t stats_computed = 0;
    std::uint64_t subspaces_scored = 0;
    std::optional<MatchReport> match;  // eval runs only
};

std::string report_to_json(const RunReport& report, int indent = 2);
RunReport report_from_json(const std::string& text);
std::string render_text(const RunReport& report);

}  // namespace sgrid

#include "sgrid/report.hpp"

#include <sstream>

#include <json.hpp>

namespace sgrid {

namespace {

using nlohmann::json;

json subspaces_to_json(const std::vector<ScoredSubspace>& subs) {
    json arr = json::array();
    for (const auto& s : subs) arr.push_back(json{{"attrs", s.subspace.attrs()}, {"z", s.z}});
    return arr;
}

std::vector<ScoredSubspace> subspaces_from_json(const json& arr) {
    std::vector<ScoredSubspace> out;
    for (const auto& e : arr) {
        ScoredSubspace s;
        s.subspace = Subspace(e.at("attrs").get<std::vector<int>>());
        s.z = e.at("z").get<double>();
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::string report_to_json(const RunReport& r, int indent) {
    json j;
    j["command"] = r.command;
    j["data"] = r.data_path;
    j["config"] = {{"estimator", to_string(r.config.estimator)},
                   {"depth", r.config.max_depth},
                   {"beam_width", r.config.beam_width},
                   {"top_k", r.config.top_k},
                   {"tau", r.config.tau ? json(*r.config.tau) : json(nullptr)},
                   {"block_size", r.config.block_size},
                   {"cache", r.cache_enabled},
                   {"jobs", r.jobs}};
    j["queries"] = r.queries;
    json results = json::array();
    for (const auto& qr : r.results)
        results.push_back(json{{"id", qr.id}, {"subspaces", subspaces_to_json(qr.subspaces)}});
    j["results"] = std::move(results);
    j["timing_ms"] = {{"ingest", r.ingest_ms}, {"build", r.build_ms}, {"search", r.search_ms}};
    j["cache_stats"] = {{"hits", r.cache_hits},
                        {"stats_computed", r.stats_computed},
                        {"subspaces_scored", r.subspaces_scored}};
    if (r.match) {
        json per_query = json::array();
        for (const auto& q : r.match->per_query)
            per_query.push_back(json{{"id", q.id}, {"exact", q.exact}, {"any", q.any}});
        j["match"] = {{"exact", r.match->exact_matches},
                      {"any", r.match->matches},
                      {"per_query", std::move(per_query)}};
    }
    return j.dump(indent) + "\n";
}

RunReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.data_path = j.at("data").get<std::string>();
    const json& c = j.at("config");
    r.config.estimator = parse_estimator(c.at("estimator").get<std::string>());
    r.config.max_depth = c.at("depth").get<int>();
    r.config.beam_width = c.at("beam_width").get<int>();
    r.config.top_k = c.at("top_k").get<int>();
    if (!c.at("tau").is_null()) r.config.tau = c.at("tau").get<double>();
    r.config.block_size = c.at("block_size").get<int>();
    r.cache_enabled = c.at("cache").get<bool>();
    r.jobs = c.at("jobs").get<int>();
    r.queries = j.at("queries").get<std::vector<int>>();
    for (const auto& e : j.at("results")) {
        QueryResult qr;
        qr.id = e.at("id").get<int>();
        qr.subspaces = subspaces_from_json(e.at("subspaces"));
        r.results.push_back(std::move(qr));
    }
    const json& t = j.at("timing_ms");
    r.ingest_ms = t.at("ingest").get<double>();
    r.build_ms = t.at("build").get<double>();
    r.search_ms = t.at("search").get<double>();
    const json& cs = j.at("cache_stats");
    r.cache_hits = cs.at("hits").get<std::uint64_t>();
    r.stats_computed = cs.at("stats_computed").get<std::uint64_t>();
    r.subspaces_scored = cs.at("subspaces_scored").get<std::uint64_t>();
    if (j.contains("match")) {
        MatchReport m;
        m.exact_matches = j["match"].at("exact").get<double>();
        m.matches = j["match"].at("any").get<double>();
        for (const auto& q : j["match"].at("per_query")) {
            QueryMatch qm;
            qm.id = q.at("id").get<int>();
            qm.exact = q.at("exact").get<double>();
            qm.any = q.at("any").get<double>();
            m.per_query.push_back(qm);
        }
        r.match = std::move(m);
    }
    return r;
}

std::string render_text(const RunReport& r) {
    std::ostringstream os;
    os << r.command << " " << r.data_path << "\n";
    os << "estimator=" << to_string(r.config.estimator) << " depth=" << r.config.max_depth
       << " beam_width=" << r.config.beam_width << " top_k=" << r.config.top_k;
    if (r.config.tau) os << " tau=" << *r.config.tau;
    os << " block_size=" << r.config.block_size << " cache=" << (r.cache_enabled ? "on" : "off")
       << " jobs=" << r.jobs << "\n";
    for (const auto& qr : r.results) {
        os << "query " << qr.id << ":\n";
        int rank = 1;
        for (const auto& s : qr.subspaces)
            os << "  " << rank++ << ". " << s.subspace.to_string() << "  z=" << s.z << "\n";
        if (qr.subspaces.empty()) os << "  (no subspaces)\n";
    }
    if (r.match) {
        os << "matches: exact=" << r.match->exact_matches << " any=" << r.match->matches
           << " over " << r.match->per_query.size() << " queries\n";
    }
    os << "timing_ms: ingest=" << r.ingest_ms << " build=" << r.build_ms
       << " search=" << r.search_ms << "\n";
    os << "cache: hits=" << r.cache_hits << " stats_computed=" << r.stats_computed
       << " subspaces_scored=" << r.subspaces_scored << "\n";
    return os.str();
}

}  // namespace sgrid

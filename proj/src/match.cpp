#include "sgrid/match.hpp"

#include <algorithm>

#include "sgrid/errors.hpp"

namespace sgrid {

namespace {

bool strict_subset(const Subspace& a, const Subspace& b) {
    if (a.size() >= b.size()) return false;
    return std::includes(b.attrs().begin(), b.attrs().end(), a.attrs().begin(),
                         a.attrs().end());
}

bool related(const Subspace& found, const Subspace& truth) {
    return strict_subset(found, truth) || strict_subset(truth, found);
}

}  // namespace

MatchReport score_matches(const std::map<int, std::vector<ScoredSubspace>>& results,
                          const GroundTruth& gt) {
    MatchReport report;
    for (const auto& [id, found] : results) {
        auto it = gt.entries.find(id);
        if (it == gt.entries.end())
            throw ConfigError("query record " + std::to_string(id) + " is not in the ground truth");
        const auto& truths = it->second;

        QueryMatch qm;
        qm.id = id;
        if (!truths.empty()) {
            const double credit = 1.0 / static_cast<double>(truths.size());
            std::vector<char> taken(truths.size(), 0);
            for (std::size_t t = 0; t < truths.size(); ++t) {
                for (const auto& f : found) {
                    if (f.subspace == truths[t]) {
                        qm.exact += credit;
                        qm.any += credit;
                        taken[t] = 1;
                        break;
                    }
                }
            }
            for (std::size_t t = 0; t < truths.size(); ++t) {
                if (taken[t]) continue;
                for (const auto& f : found) {
                    if (related(f.subspace, truths[t])) {
                        qm.any += credit;
                        break;
                    }
                }
            }
            qm.exact = std::min(qm.exact, 1.0);
            qm.any = std::min(qm.any, 1.0);
        }
        report.exact_matches += qm.exact;
        report.matches += qm.any;
        report.per_query.push_back(qm);
    }
    return report;
}

}  // namespace sgrid

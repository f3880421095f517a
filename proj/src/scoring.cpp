#include "sgrid/scoring.hpp"

#include <cmath>

namespace sgrid {

SubspaceScoreStats subspace_stats(const Estimator& est, const Subspace& s) {
    const std::vector<double> scores = est.base_scores(s);
    const double n = static_cast<double>(scores.size());

    double mean = 0;
    for (double v : scores) mean += v;
    mean /= n;
    double ss = 0;
    for (double v : scores) ss += (v - mean) * (v - mean);

    SubspaceScoreStats st;
    st.mean = mean;
    st.stddev = std::sqrt(ss / n);
    st.tag = est.kind();
    return st;
}

}  // namespace sgrid

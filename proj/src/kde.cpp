#include "sgrid/kde.hpp"

#include <cmath>

#include "sgrid/errors.hpp"

namespace sgrid {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double bandwidth(const AttributeStats& st, std::size_t n) {
    if (st.stddev <= 0)
        throw EstimatorError("degenerate bandwidth: constant attribute");
    double m = std::min(st.stddev, st.iqr / 1.34);
    if (m <= 0) m = st.stddev;
    return 1.06 * m * std::pow(static_cast<double>(n), -0.2);
}

Bandwidths compute_bandwidths(const Dataset& ds) {
    Bandwidths hs;
    hs.h.resize(static_cast<std::size_t>(ds.d()), 0.0);
    hs.usable.resize(static_cast<std::size_t>(ds.d()), 0);
    for (int a = 0; a < ds.d(); ++a) {
        const AttributeStats st = attribute_stats(ds, a);
        if (st.stddev <= 0) continue;
        hs.h[static_cast<std::size_t>(a)] = bandwidth(st, static_cast<std::size_t>(ds.n()));
        hs.usable[static_cast<std::size_t>(a)] = 1;
    }
    return hs;
}

double kde_density(const Dataset& ds, const Bandwidths& hs, const Subspace& s,
                   std::span<const double> q) {
    const int n = ds.n();
    const int k = s.size();
    double h_prod = 1.0;
    for (int a : s.attrs()) {
        if (!hs.attribute_usable(a))
            throw EstimatorError("degenerate bandwidth for attribute " + std::to_string(a));
        h_prod *= hs.h[static_cast<std::size_t>(a)];
    }

    // The product of standard-normal kernels over s collapses to a single
    // exponential of the summed squared scaled offsets.
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double sq = 0.0;
        for (int a : s.attrs()) {
            const double u = (q[static_cast<std::size_t>(a)] - ds.value(i, a)) /
                             hs.h[static_cast<std::size_t>(a)];
            sq += u * u;
        }
        acc += std::exp(-0.5 * sq);
    }
    const double norm = static_cast<double>(n) * h_prod * std::pow(kTwoPi, 0.5 * k);
    return acc / norm;
}

}  // namespace sgrid

#pragma once

#include <span>
#include <vector>

#include "sgrid/dataset.hpp"
#include "sgrid/subspace.hpp"

namespace sgrid {

/// Per-attribute Gaussian kernel bandwidths. Constant attributes have no
/// defined bandwidth and are marked unusable instead of being given an
/// epsilon that would dominate the product kernel.
struct Bandwidths {
    std::vector<double> h;
    std::vector<char> usable;

    bool attribute_usable(int a) const { return usable[static_cast<std::size_t>(a)] != 0; }
};

/// Rule-of-thumb bandwidth 1.06 * min(stddev, IQR/1.34) * n^(-1/5). A zero
/// IQR falls back to the stddev alone; a zero stddev (constant attribute)
/// throws EstimatorError.
double bandwidth(const AttributeStats& st, std::size_t n);

Bandwidths compute_bandwidths(const Dataset& ds);

/// Gaussian product-kernel density of q in subspace s:
///   (1 / (n * prod h_a)) * sum_i prod_{a in s} K((q_a - x_ia) / h_a)
/// with K the standard normal pdf. Throws EstimatorError when s contains an
/// attribute without a usable bandwidth.
double kde_density(const Dataset& ds, const Bandwidths& hs, const Subspace& s,
                   std::span<const double> q);

}  // namespace sgrid

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sgrid/dataset.hpp"
#include "sgrid/subspace.hpp"

namespace sgrid {

struct SyntheticSpec {
    int n = 1000;
    int d = 10;
    std::vector<int> group_sizes;  // each in [2, 5], sum <= d
    int outlier_count = 10;
    std::uint64_t seed = 0;
};

/// Per outlier record id: the attribute groups it was planted to deviate in.
struct GroundTruth {
    std::map<int, std::vector<Subspace>> entries;
};

struct GroupLayout {
    std::vector<int> attrs;
    std::vector<std::vector<double>> centers;  // cluster centers in group space
    double sigma = 1.0;
};

struct SynthData {
    Dataset data;
    GroundTruth truth;
    std::vector<GroupLayout> groups;
};

/// Deterministic synthetic data with planted subspace outliers.
///
/// Attributes are partitioned into the requested groups (leftover attributes
/// are independent uniform noise). Within a group, inliers come from a
/// mixture of well-separated Gaussian clusters, truncated so that every
/// inlier stays strictly within 3 cluster sigmas of its own center. Each
/// outlier record is placed, in each group it deviates in, at a point at
/// least 3 sigmas away from every cluster center of that group, and drawn as
/// an inlier everywhere else.
SynthData generate(const SyntheticSpec& spec);

/// Round-trippable CSV (shortest representation that parses back exactly).
void write_csv(const Dataset& ds, const std::string& path);

/// Sidecar ground-truth file, one line per outlier:
///   record_id: {a,b};{c,d}
void write_truth(const GroundTruth& gt, const std::string& path);
GroundTruth read_truth(const std::string& path);

}  // namespace sgrid

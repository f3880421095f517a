#include "sgrid/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "sgrid/errors.hpp"

namespace sgrid {

namespace {

// Generator geometry. Group attributes live in [0, kBoxSide]; cluster sigma
// is 1, so distances below are in sigma units too.
constexpr int kClustersPerGroup = 4;
constexpr double kClusterSigma = 1.0;
constexpr double kBoxSide = 24.0;
constexpr double kCenterMargin = 3.5;    // keep cluster mass inside the box
constexpr double kCenterMinSep = 9.0;    // pairwise cluster separation
constexpr double kInlierRadius = 2.9;    // inliers truncated inside this radius
constexpr double kOutlierMinDist = 6.0;  // planted points at least this far from all centers
constexpr double kExtraGroupProb = 1.0 / 3.0;

double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

std::vector<std::vector<double>> sample_centers(int k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(kCenterMargin, kBoxSide - kCenterMargin);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<std::vector<double>> centers;
        bool ok = true;
        for (int c = 0; c < kClustersPerGroup && ok; ++c) {
            std::vector<double> p(static_cast<std::size_t>(k));
            for (auto& v : p) v = u(rng);
            for (const auto& q : centers)
                if (dist(p, q) < kCenterMinSep * kClusterSigma) {
                    ok = false;
                    break;
                }
            if (ok) centers.push_back(std::move(p));
        }
        if (ok) return centers;
    }
    throw ConfigError("could not place separated cluster centers");
}

std::vector<double> sample_inlier(const std::vector<std::vector<double>>& centers, int k,
                                  std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(centers.size()) - 1);
    std::normal_distribution<double> gauss(0.0, kClusterSigma);
    const auto& c = centers[static_cast<std::size_t>(pick(rng))];
    while (true) {
        std::vector<double> off(static_cast<std::size_t>(k));
        double norm2 = 0;
        for (auto& v : off) {
            v = gauss(rng);
            norm2 += v * v;
        }
        if (norm2 >= kInlierRadius * kInlierRadius * kClusterSigma * kClusterSigma) continue;
        std::vector<double> p(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] + off[static_cast<std::size_t>(i)];
        return p;
    }
}

std::vector<double> sample_outlier(const std::vector<std::vector<double>>& centers, int k,
                                   std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, kBoxSide);
    while (true) {
        std::vector<double> p(static_cast<std::size_t>(k));
        for (auto& v : p) v = u(rng);
        bool empty_region = true;
        for (const auto& c : centers)
            if (dist(p, c) < kOutlierMinDist * kClusterSigma) {
                empty_region = false;
                break;
            }
        if (empty_region) return p;
    }
}

void format_value(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

SynthData generate(const SyntheticSpec& spec) {
    if (spec.n < 1) throw ConfigError("data size must be positive");
    if (spec.d < 1) throw ConfigError("attribute count must be positive");
    if (spec.outlier_count < 0 || spec.outlier_count > spec.n)
        throw ConfigError("outlier count must be in [0, n]");
    int total = 0;
    for (int g : spec.group_sizes) {
        if (g < 2 || g > 5)
            throw ConfigError("group sizes must be in [2, 5] (got " + std::to_string(g) + ")");
        total += g;
    }
    if (total > spec.d)
        throw ConfigError("group sizes sum to " + std::to_string(total) +
                          ", more than d = " + std::to_string(spec.d));
    if (spec.outlier_count > 0 && spec.group_sizes.empty())
        throw ConfigError("cannot plant outliers without attribute groups");

    std::mt19937_64 rng(spec.seed);

    SynthData out;
    int next_attr = 0;
    for (int size : spec.group_sizes) {
        GroupLayout layout;
        layout.sigma = kClusterSigma;
        for (int i = 0; i < size; ++i) layout.attrs.push_back(next_attr++);
        layout.centers = sample_centers(size, rng);
        out.groups.push_back(std::move(layout));
    }

    // Outlier record ids: partial Fisher-Yates over [0, n).
    std::vector<int> ids(static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) ids[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < spec.outlier_count; ++i) {
        std::uniform_int_distribution<int> pick(i, spec.n - 1);
        std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(pick(rng))]);
    }
    std::vector<int> outlier_ids(ids.begin(), ids.begin() + spec.outlier_count);
    std::sort(outlier_ids.begin(), outlier_ids.end());

    // Which groups each outlier deviates in: one chosen uniformly, the rest
    // joining independently.
    const int num_groups = static_cast<int>(out.groups.size());
    std::vector<std::vector<char>> deviates(outlier_ids.size(),
                                            std::vector<char>(static_cast<std::size_t>(std::max(1, num_groups)), 0));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t oi = 0; oi < outlier_ids.size(); ++oi) {
        std::uniform_int_distribution<int> pick(0, num_groups - 1);
        const int primary = pick(rng);
        for (int g = 0; g < num_groups; ++g)
            deviates[oi][static_cast<std::size_t>(g)] =
                (g == primary || coin(rng) < kExtraGroupProb) ? 1 : 0;
    }
    std::vector<int> outlier_index(static_cast<std::size_t>(spec.n), -1);
    for (std::size_t oi = 0; oi < outlier_ids.size(); ++oi)
        outlier_index[static_cast<std::size_t>(outlier_ids[oi])] = static_cast<int>(oi);

    std::vector<std::vector<double>> columns(static_cast<std::size_t>(spec.d));
    for (auto& c : columns) c.resize(static_cast<std::size_t>(spec.n));
    std::uniform_real_distribution<double> noise(0.0, kBoxSide);

    for (int i = 0; i < spec.n; ++i) {
        const int oi = outlier_index[static_cast<std::size_t>(i)];
        for (int g = 0; g < num_groups; ++g) {
            const GroupLayout& layout = out.groups[static_cast<std::size_t>(g)];
            const int k = static_cast<int>(layout.attrs.size());
            const bool deviate = oi >= 0 && deviates[static_cast<std::size_t>(oi)][static_cast<std::size_t>(g)];
            const std::vector<double> p = deviate ? sample_outlier(layout.centers, k, rng)
                                                  : sample_inlier(layout.centers, k, rng);
            for (int z = 0; z < k; ++z)
                columns[static_cast<std::size_t>(layout.attrs[static_cast<std::size_t>(z)])]
                       [static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(z)];
        }
        for (int a = total; a < spec.d; ++a)
            columns[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] = noise(rng);
    }

    for (std::size_t oi = 0; oi < outlier_ids.size(); ++oi) {
        std::vector<Subspace> subs;
        for (int g = 0; g < num_groups; ++g)
            if (deviates[oi][static_cast<std::size_t>(g)])
                subs.emplace_back(out.groups[static_cast<std::size_t>(g)].attrs);
        out.truth.entries[outlier_ids[oi]] = std::move(subs);
    }

    out.data = Dataset::from_columns(std::move(columns));
    return out;
}

void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw LoadError("cannot write '" + path + "'");
    std::string line;
    for (int i = 0; i < ds.n(); ++i) {
        line.clear();
        for (int a = 0; a < ds.d(); ++a) {
            if (a) line += ',';
            format_value(line, ds.value(i, a));
        }
        line += '\n';
        f << line;
    }
}

void write_truth(const GroundTruth& gt, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw LoadError("cannot write '" + path + "'");
    for (const auto& [id, subs] : gt.entries) {
        f << id << ": ";
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (i) f << ';';
            f << subs[i].to_string();
        }
        f << '\n';
    }
}

GroundTruth read_truth(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw LoadError("cannot open '" + path + "'");
    GroundTruth gt;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw LoadError(path + ": line " + std::to_string(lineno) + ": missing ':'");
        int id = 0;
        const char* b = line.data();
        auto [p, ec] = std::from_chars(b, b + colon, id);
        if (ec != std::errc())
            throw LoadError(path + ": line " + std::to_string(lineno) + ": bad record id");

        std::vector<Subspace> subs;
        std::string rest = line.substr(colon + 1);
        std::stringstream ss(rest);
        std::string part;
        while (std::getline(ss, part, ';')) {
            std::vector<int> attrs;
            std::string num;
            for (char c : part) {
                if (c >= '0' && c <= '9') {
                    num += c;
                } else if (!num.empty()) {
                    attrs.push_back(std::stoi(num));
                    num.clear();
                }
            }
            if (!num.empty()) attrs.push_back(std::stoi(num));
            if (!attrs.empty()) subs.emplace_back(std::move(attrs));
        }
        gt.entries[id] = std::move(subs);
    }
    return gt;
}

}  // namespace sgrid

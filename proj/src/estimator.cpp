#include "sgrid/estimator.hpp"

#include <cmath>

#include "sgrid/errors.hpp"
#include "sgrid/grid_index.hpp"
#include "sgrid/kde.hpp"

namespace sgrid {

const char* to_string(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::sgrid: return "sgrid";
        case EstimatorKind::grid: return "grid";
        case EstimatorKind::kde: return "kde";
    }
    return "?";
}

EstimatorKind parse_estimator(const std::string& name) {
    if (name == "sgrid") return EstimatorKind::sgrid;
    if (name == "grid") return EstimatorKind::grid;
    if (name == "kde") return EstimatorKind::kde;
    throw ConfigError("unknown estimator '" + name + "' (expected sgrid, grid or kde)");
}

std::vector<double> Estimator::base_scores(const Subspace& s) const {
    std::vector<double> out(static_cast<std::size_t>(records()));
    for (int i = 0; i < records(); ++i) out[static_cast<std::size_t>(i)] = score_record(s, i);
    return out;
}

namespace {

template <class Word>
class GridEstimator final : public Estimator {
public:
    GridEstimator(const Dataset& ds, bool smoothed)
        : grid_(BinGrid<Word>::build(ds)), smoothed_(smoothed) {}

    GridEstimator(BinGrid<Word> grid, bool smoothed)
        : grid_(std::move(grid)), smoothed_(smoothed) {}

    EstimatorKind kind() const override {
        return smoothed_ ? EstimatorKind::sgrid : EstimatorKind::grid;
    }
    int dims() const override { return grid_.d(); }
    int records() const override { return grid_.n(); }

    double score(const Subspace& s, std::span<const double> point) const override {
        return static_cast<double>(smoothed_ ? grid_.neighborhood_count(s, point)
                                             : grid_.ordinary_count(s, point));
    }

    double score_record(const Subspace& s, int i) const override {
        return static_cast<double>(smoothed_ ? grid_.neighborhood_count_record(s, i)
                                             : grid_.ordinary_count_record(s, i));
    }

    const BinGrid<Word>& grid() const { return grid_; }

private:
    BinGrid<Word> grid_;
    bool smoothed_;
};

class KdeEstimator final : public Estimator {
public:
    explicit KdeEstimator(const Dataset& ds) : ds_(ds), hs_(compute_bandwidths(ds)) {}

    EstimatorKind kind() const override { return EstimatorKind::kde; }
    int dims() const override { return ds_.d(); }
    int records() const override { return ds_.n(); }

    bool attribute_usable(int a) const override { return hs_.attribute_usable(a); }

    double score(const Subspace& s, std::span<const double> point) const override {
        return kde_density(ds_, hs_, s, point);
    }

    double score_record(const Subspace& s, int i) const override {
        const std::vector<double> r = ds_.row(i);
        return kde_density(ds_, hs_, s, r);
    }

    // The pairwise kernel is symmetric, so scoring all records needs only
    // the upper triangle of the pair matrix.
    std::vector<double> base_scores(const Subspace& s) const override {
        const int n = ds_.n();
        const int k = s.size();
        double h_prod = 1.0;
        std::vector<const double*> cols;
        std::vector<double> inv_h;
        for (int a : s.attrs()) {
            if (!hs_.attribute_usable(a))
                throw EstimatorError("degenerate bandwidth for attribute " + std::to_string(a));
            h_prod *= hs_.h[static_cast<std::size_t>(a)];
            cols.push_back(ds_.column(a).data());
            inv_h.push_back(1.0 / hs_.h[static_cast<std::size_t>(a)]);
        }

        std::vector<double> acc(static_cast<std::size_t>(n), 1.0);  // diagonal term exp(0)
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double sq = 0.0;
                for (int z = 0; z < k; ++z) {
                    const double u = (cols[static_cast<std::size_t>(z)][i] -
                                      cols[static_cast<std::size_t>(z)][j]) *
                                     inv_h[static_cast<std::size_t>(z)];
                    sq += u * u;
                }
                const double kv = std::exp(-0.5 * sq);
                acc[static_cast<std::size_t>(i)] += kv;
                acc[static_cast<std::size_t>(j)] += kv;
            }
        }
        const double norm =
            1.0 / (static_cast<double>(n) * h_prod *
                   std::pow(6.283185307179586476925286766559, 0.5 * k));
        for (double& v : acc) v *= norm;
        return acc;
    }

private:
    const Dataset& ds_;
    Bandwidths hs_;
};

}  // namespace

std::unique_ptr<Estimator> build_grid_estimator(BinGrid<std::uint64_t> grid, bool smoothed) {
    return std::make_unique<GridEstimator<std::uint64_t>>(std::move(grid), smoothed);
}

std::unique_ptr<Estimator> build_estimator(const Dataset& ds, EstimatorKind kind,
                                           int block_size) {
    if (kind == EstimatorKind::kde) return std::make_unique<KdeEstimator>(ds);
    const bool smoothed = kind == EstimatorKind::sgrid;
    switch (block_size) {
        case 8: return std::make_unique<GridEstimator<std::uint8_t>>(ds, smoothed);
        case 16: return std::make_unique<GridEstimator<std::uint16_t>>(ds, smoothed);
        case 32: return std::make_unique<GridEstimator<std::uint32_t>>(ds, smoothed);
        case 64: return std::make_unique<GridEstimator<std::uint64_t>>(ds, smoothed);
        default:
            throw ConfigError("block size must be 8, 16, 32 or 64 (got " +
                              std::to_string(block_size) + ")");
    }
}

}  // namespace sgrid

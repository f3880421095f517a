#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "sgrid/bitset_vector.hpp"
#include "sgrid/dataset.hpp"
#include "sgrid/subspace.hpp"

namespace sgrid {

/// Equal-width bin width 2*IQR/n^(1/3). Falls back to 3.49*stddev/n^(1/3)
/// when the IQR is zero, and to 0 (single-bin attribute) when the column is
/// constant.
inline double fd_bin_width(const AttributeStats& st, std::size_t n) {
    const double scale = std::pow(static_cast<double>(n), -1.0 / 3.0);
    if (st.iqr > 0) return 2.0 * st.iqr * scale;
    if (st.stddev > 0) return 3.49 * st.stddev * scale;
    return 0.0;
}

/// Per-attribute equal-width bin index with bit-set membership.
///
/// For every attribute the raw bins partition the records; bins[i] holds the
/// records whose value falls in [origin + i*width, origin + (i+1)*width),
/// with the attribute maximum folded into the last bin. pseudo_bins[i] is
/// the union of bins[i-1], bins[i], bins[i+1] (clamped at the edges), built
/// once here so that the count of a query's neighborhood in a k-attribute
/// subspace is a single k-way intersection instead of up to 3^k of them.
template <class Word>
class BinGrid {
public:
    struct Axis {
        double origin = 0;
        double width = 0;  // 0 means single-bin attribute
        int bin_count = 1;
        std::vector<BitSetVec<Word>> bins;
        std::vector<BitSetVec<Word>> pseudo_bins;
        std::vector<std::int32_t> record_bin;  // raw bin of each record
    };

    static BinGrid build(const Dataset& ds) {
        std::vector<double> widths(static_cast<std::size_t>(ds.d()));
        for (int a = 0; a < ds.d(); ++a)
            widths[static_cast<std::size_t>(a)] =
                fd_bin_width(attribute_stats(ds, a), static_cast<std::size_t>(ds.n()));
        return build_with_widths(ds, widths);
    }

    /// Same construction with caller-chosen widths; width <= 0 collapses the
    /// attribute to one bin. Origin is always the attribute minimum.
    static BinGrid build_with_widths(const Dataset& ds, const std::vector<double>& widths) {
        BinGrid g;
        g.n_ = ds.n();
        g.axes_.resize(static_cast<std::size_t>(ds.d()));
        for (int a = 0; a < ds.d(); ++a)
            build_axis(ds.column(a), widths[static_cast<std::size_t>(a)],
                       g.axes_[static_cast<std::size_t>(a)]);
        return g;
    }

    int n() const { return n_; }
    int d() const { return static_cast<int>(axes_.size()); }
    const Axis& axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }

    /// Bin covering value v on the given axis; out-of-range values clamp to
    /// the edge bins so every real point maps somewhere.
    int bin_index(int a, double v) const {
        const Axis& ax = axes_[static_cast<std::size_t>(a)];
        if (ax.width <= 0) return 0;
        int i = bin_of(ax, v);
        if (i < 0) i = 0;
        if (i >= ax.bin_count) i = ax.bin_count - 1;
        return i;
    }

    /// |N_s(point)|: records in the bin covering the point plus all adjacent
    /// bins in every attribute of s, via one k-way pseudo-bin intersection.
    std::size_t neighborhood_count(const Subspace& s, std::span<const double> point,
                                   IntersectCost* cost = nullptr) const {
        return count_point(s, point, /*smoothed=*/true, cost);
    }

    /// Ordinary grid count: raw bins only.
    std::size_t ordinary_count(const Subspace& s, std::span<const double> point,
                               IntersectCost* cost = nullptr) const {
        return count_point(s, point, /*smoothed=*/false, cost);
    }

    /// Fast path for a record already indexed by the grid.
    std::size_t neighborhood_count_record(const Subspace& s, int record,
                                          IntersectCost* cost = nullptr) const {
        return count_record(s, record, /*smoothed=*/true, cost);
    }

    std::size_t ordinary_count_record(const Subspace& s, int record,
                                      IntersectCost* cost = nullptr) const {
        return count_record(s, record, /*smoothed=*/false, cost);
    }

    /// Reference route for |N_s(point)|: enumerate every combination of
    /// {i-1, i, i+1} raw bins across the attributes of s and sum the
    /// intersection counts. The cells are disjoint, so the sum is the
    /// neighborhood size. Kept alongside the pseudo-bin path so the two can
    /// be checked against each other.
    std::size_t neighborhood_count_rawbins(const Subspace& s, std::span<const double> point) const {
        const auto spans = neighbor_spans(s, point);
        const std::size_t k = spans.size();
        std::vector<std::size_t> odo(k, 0);
        std::vector<const BitSetVec<Word>*> sets(k);
        std::size_t total = 0;
        while (true) {
            for (std::size_t z = 0; z < k; ++z) {
                const Axis& ax = axes_[static_cast<std::size_t>(s.attrs()[z])];
                sets[z] = &ax.bins[static_cast<std::size_t>(spans[z][odo[z]])];
            }
            total += intersect_count<Word>(sets, nullptr);
            std::size_t z = 0;
            while (z < k && ++odo[z] == spans[z].size()) odo[z++] = 0;
            if (z == k) break;
        }
        return total;
    }

    /// Raw-bin indices making up the neighborhood along each attribute of s.
    std::vector<std::vector<int>> neighbor_spans(const Subspace& s,
                                                 std::span<const double> point) const {
        std::vector<std::vector<int>> spans;
        spans.reserve(static_cast<std::size_t>(s.size()));
        for (int a : s.attrs()) {
            const Axis& ax = axes_[static_cast<std::size_t>(a)];
            const int i = bin_index(a, point[static_cast<std::size_t>(a)]);
            std::vector<int> ids;
            for (int j = std::max(0, i - 1); j <= std::min(ax.bin_count - 1, i + 1); ++j)
                ids.push_back(j);
            spans.push_back(std::move(ids));
        }
        return spans;
    }

private:
    static void build_axis(const std::vector<double>& col, double width, Axis& ax) {
        const std::size_t n = col.size();
        double mn = col[0], mx = col[0];
        for (double v : col) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        ax.origin = mn;
        ax.width = width > 0 ? width : 0;
        if (ax.width > 0) {
            const double range = mx - mn;
            ax.bin_count = std::max(1, static_cast<int>(std::ceil(range / ax.width)));
        } else {
            ax.bin_count = 1;
        }

        ax.bins.assign(static_cast<std::size_t>(ax.bin_count), BitSetVec<Word>(n));
        ax.record_bin.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            int b = 0;
            if (ax.width > 0) {
                b = static_cast<int>(std::floor((col[i] - ax.origin) / ax.width));
                if (b < 0) b = 0;
                if (b >= ax.bin_count) b = ax.bin_count - 1;  // max folds into last bin
            }
            ax.record_bin[i] = b;
            ax.bins[static_cast<std::size_t>(b)].set(i);
        }

        ax.pseudo_bins.assign(static_cast<std::size_t>(ax.bin_count), BitSetVec<Word>(n));
        for (int i = 0; i < ax.bin_count; ++i) {
            auto& p = ax.pseudo_bins[static_cast<std::size_t>(i)];
            for (int j = std::max(0, i - 1); j <= std::min(ax.bin_count - 1, i + 1); ++j)
                p.or_with(ax.bins[static_cast<std::size_t>(j)]);
        }
    }

    static int bin_of(const Axis& ax, double v) {
        return static_cast<int>(std::floor((v - ax.origin) / ax.width));
    }

    std::size_t count_point(const Subspace& s, std::span<const double> point, bool smoothed,
                            IntersectCost* cost) const {
        const std::size_t k = static_cast<std::size_t>(s.size());
        const BitSetVec<Word>* stack[kInlineSets] = {};
        std::vector<const BitSetVec<Word>*> heap;
        const BitSetVec<Word>** sets = pick_buffer(k, stack, heap);
        for (std::size_t z = 0; z < k; ++z) {
            const int a = s.attrs()[z];
            const Axis& ax = axes_[static_cast<std::size_t>(a)];
            const int i = bin_index(a, point[static_cast<std::size_t>(a)]);
            sets[z] = smoothed ? &ax.pseudo_bins[static_cast<std::size_t>(i)]
                               : &ax.bins[static_cast<std::size_t>(i)];
        }
        return intersect_count<Word>(std::span<const BitSetVec<Word>* const>(sets, k), cost);
    }

    std::size_t count_record(const Subspace& s, int record, bool smoothed,
                             IntersectCost* cost) const {
        const std::size_t k = static_cast<std::size_t>(s.size());
        const BitSetVec<Word>* stack[kInlineSets] = {};
        std::vector<const BitSetVec<Word>*> heap;
        const BitSetVec<Word>** sets = pick_buffer(k, stack, heap);
        for (std::size_t z = 0; z < k; ++z) {
            const Axis& ax = axes_[static_cast<std::size_t>(s.attrs()[z])];
            const int i = ax.record_bin[static_cast<std::size_t>(record)];
            sets[z] = smoothed ? &ax.pseudo_bins[static_cast<std::size_t>(i)]
                               : &ax.bins[static_cast<std::size_t>(i)];
        }
        return intersect_count<Word>(std::span<const BitSetVec<Word>* const>(sets, k), cost);
    }

    static constexpr std::size_t kInlineSets = 16;

    static const BitSetVec<Word>** pick_buffer(std::size_t k, const BitSetVec<Word>** stack,
                                               std::vector<const BitSetVec<Word>*>& heap) {
        if (k <= kInlineSets) return stack;
        heap.resize(k);
        return heap.data();
    }

    int n_ = 0;
    std::vector<Axis> axes_;
};

}  // namespace sgrid

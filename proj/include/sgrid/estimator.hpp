#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sgrid/dataset.hpp"
#include "sgrid/grid_index.hpp"
#include "sgrid/subspace.hpp"

namespace sgrid {

enum class EstimatorKind { sgrid, grid, kde };

const char* to_string(EstimatorKind k);
EstimatorKind parse_estimator(const std::string& name);  // throws ConfigError

/// Base-score estimator over an immutable dataset. Implementations are pure
/// after construction and safe for concurrent callers.
class Estimator {
public:
    virtual ~Estimator() = default;

    virtual EstimatorKind kind() const = 0;
    virtual int dims() const = 0;
    virtual int records() const = 0;

    /// False for attributes the estimator cannot score (constant columns
    /// under KDE); the miner drops them from its attribute pool.
    virtual bool attribute_usable(int /*a*/) const { return true; }

    /// Base score of an arbitrary point in subspace s.
    virtual double score(const Subspace& s, std::span<const double> point) const = 0;

    /// Base score of record i; equals score(s, row(i)).
    virtual double score_record(const Subspace& s, int i) const = 0;

    /// Base score of every record in s, in record order.
    virtual std::vector<double> base_scores(const Subspace& s) const;
};

/// Builds the chosen estimator over ds. block_size selects the bit-set word
/// width for the grid estimators (8, 16, 32 or 64) and is ignored by KDE.
std::unique_ptr<Estimator> build_estimator(const Dataset& ds, EstimatorKind kind,
                                           int block_size = 64);

/// Wraps an already-built 64-bit grid, for callers that chose the bin widths
/// themselves.
std::unique_ptr<Estimator> build_grid_estimator(BinGrid<std::uint64_t> grid, bool smoothed);

}  // namespace sgrid

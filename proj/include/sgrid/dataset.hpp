#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sgrid/errors.hpp"

namespace sgrid {

/// Immutable column-oriented numeric table. All columns have the same
/// length n >= 1 and contain only finite values; both are enforced on
/// construction, so downstream estimators never see NaN/inf.
class Dataset {
public:
    Dataset() = default;

    static Dataset from_columns(std::vector<std::vector<double>> columns,
                                std::vector<std::string> names = {});

    int n() const { return n_; }
    int d() const { return static_cast<int>(columns_.size()); }

    const std::vector<double>& column(int a) const { return columns_[static_cast<std::size_t>(a)]; }
    double value(int record, int a) const { return columns_[static_cast<std::size_t>(a)][static_cast<std::size_t>(record)]; }
    std::vector<double> row(int record) const;

    // Constant columns are kept but flagged; estimators decide what to do.
    bool is_constant(int a) const { return constant_[static_cast<std::size_t>(a)] != 0; }

    const std::vector<std::string>& attribute_names() const { return names_; }

private:
    std::vector<std::vector<double>> columns_;
    std::vector<std::string> names_;
    std::vector<char> constant_;
    int n_ = 0;
};

struct AttributeStats {
    double min = 0;
    double max = 0;
    double stddev = 0;  // population
    double iqr = 0;
    double q1 = 0;
    double q3 = 0;
};

/// Loads a comma-separated numeric file. Parse failures name the offending
/// (row, column), 1-based including any header line.
Dataset load_csv(const std::string& path, bool has_header);

/// True when the first line contains a cell that does not parse as a number.
bool csv_has_header(const std::string& path);

/// Order statistics of one column. Quartiles use nearest-rank with ceiling
/// on 1-based ranks: q1 = sorted[ceil(n/4)], q3 = sorted[ceil(3n/4)].
AttributeStats attribute_stats(const Dataset& ds, int a);

}  // namespace sgrid

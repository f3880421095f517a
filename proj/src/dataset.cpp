#include "sgrid/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sgrid {

namespace {

bool parse_double(std::string_view cell, double& out) {
    // from_chars does not accept leading whitespace or '+'; trim manually.
    std::size_t b = cell.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return false;
    std::size_t e = cell.find_last_not_of(" \t\r");
    cell = cell.substr(b, e - b + 1);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

void split_line(const std::string& line, std::vector<std::string_view>& cells) {
    cells.clear();
    std::string_view v(line);
    if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
    std::size_t start = 0;
    while (true) {
        std::size_t pos = v.find(',', start);
        if (pos == std::string_view::npos) {
            cells.push_back(v.substr(start));
            break;
        }
        cells.push_back(v.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

Dataset Dataset::from_columns(std::vector<std::vector<double>> columns,
                              std::vector<std::string> names) {
    if (columns.empty()) throw LoadError("dataset has no columns");
    const std::size_t n = columns.front().size();
    if (n == 0) throw LoadError("dataset has no records");
    for (std::size_t a = 0; a < columns.size(); ++a) {
        if (columns[a].size() != n)
            throw LoadError("column " + std::to_string(a) + " has length " +
                            std::to_string(columns[a].size()) + ", expected " + std::to_string(n));
        for (double v : columns[a])
            if (!std::isfinite(v))
                throw LoadError("column " + std::to_string(a) + " contains a non-finite value");
    }
    if (!names.empty() && names.size() != columns.size())
        throw LoadError("attribute name count does not match column count");

    Dataset ds;
    ds.n_ = static_cast<int>(n);
    ds.constant_.reserve(columns.size());
    for (const auto& col : columns) {
        auto [mn, mx] = std::minmax_element(col.begin(), col.end());
        ds.constant_.push_back(*mn == *mx ? 1 : 0);
    }
    ds.columns_ = std::move(columns);
    ds.names_ = std::move(names);
    return ds;
}

std::vector<double> Dataset::row(int record) const {
    std::vector<double> out(columns_.size());
    for (std::size_t a = 0; a < columns_.size(); ++a)
        out[a] = columns_[a][static_cast<std::size_t>(record)];
    return out;
}

Dataset load_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open '" + path + "'");

    std::vector<std::vector<double>> columns;
    std::vector<std::string> names;
    std::vector<std::string_view> cells;
    std::string line;
    std::size_t lineno = 0;
    std::size_t rows = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        split_line(line, cells);
        if (lineno == 1 && has_header) {
            for (auto c : cells) names.emplace_back(c);
            continue;
        }
        if (columns.empty()) {
            columns.resize(cells.size());
        } else if (cells.size() != columns.size()) {
            throw LoadError(path + ": row " + std::to_string(lineno) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(columns.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v;
            if (!parse_double(cells[c], v) || !std::isfinite(v))
                throw LoadError(path + ": cannot parse cell at row " + std::to_string(lineno) +
                                ", column " + std::to_string(c + 1));
            columns[c].push_back(v);
        }
        ++rows;
    }
    if (rows == 0) throw LoadError(path + ": no data rows");
    return Dataset::from_columns(std::move(columns), std::move(names));
}

bool csv_has_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) return false;
    std::vector<std::string_view> cells;
    split_line(line, cells);
    double v;
    for (auto c : cells)
        if (!parse_double(c, v)) return true;
    return false;
}

AttributeStats attribute_stats(const Dataset& ds, int a) {
    const auto& col = ds.column(a);
    const std::size_t n = col.size();
    std::vector<double> sorted(col);
    std::sort(sorted.begin(), sorted.end());

    AttributeStats st;
    st.min = sorted.front();
    st.max = sorted.back();
    // nearest-rank quartiles, 1-based: rank = ceil(p * n)
    const std::size_t r1 = (n + 3) / 4;       // ceil(n/4)
    const std::size_t r3 = (3 * n + 3) / 4;   // ceil(3n/4)
    st.q1 = sorted[r1 - 1];
    st.q3 = sorted[r3 - 1];
    st.iqr = st.q3 - st.q1;

    // Moments over the sorted copy, so any row permutation yields the exact
    // same result.
    double mean = 0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0;
    for (double v : sorted) ss += (v - mean) * (v - mean);
    st.stddev = std::sqrt(ss / static_cast<double>(n));
    return st;
}

}  // namespace sgrid

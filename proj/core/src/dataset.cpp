#include "frauddet/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "frauddet/random.hpp"

namespace frauddet {

std::size_t Dataset::count_label(int label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

Dataset Dataset::take(std::span<const std::size_t> indices) const {
    Dataset out;
    out.features = features.take_rows(indices);
    out.labels.reserve(indices.size());
    for (std::size_t i : indices) out.labels.push_back(labels[i]);
    out.feature_names = feature_names;
    return out;
}

void Dataset::validate() const {
    if (features.rows() != labels.size())
        throw std::invalid_argument("Dataset: feature rows != label count");
    if (!feature_names.empty() && feature_names.size() != features.cols())
        throw std::invalid_argument("Dataset: feature_names length != feature count");
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != 0 && labels[i] != 1)
            throw std::invalid_argument("Dataset: non-binary label at row " + std::to_string(i));
    for (std::size_t i = 0; i < features.rows(); ++i)
        for (std::size_t j = 0; j < features.cols(); ++j)
            if (!std::isfinite(features(i, j)))
                throw std::invalid_argument("Dataset: non-finite value at row " +
                                            std::to_string(i) + ", column " + std::to_string(j));
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& raw, std::size_t row, const std::string& column) {
    const std::string s = trim(raw);
    double value = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || s.empty())
        throw std::runtime_error("load_csv: non-numeric cell '" + raw + "' at row " +
                                 std::to_string(row) + ", column '" + column + "'");
    if (!std::isfinite(value))
        throw std::runtime_error("load_csv: non-finite cell at row " + std::to_string(row) +
                                 ", column '" + column + "'");
    return value;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open file '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("load_csv: empty file '" + path + "'");

    std::vector<std::string> header = split_line(line);
    for (auto& h : header) {
        h = trim(h);
        if (h.size() >= 2 && h.front() == '"' && h.back() == '"')
            h = h.substr(1, h.size() - 2);
    }

    std::size_t label_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == label_column) {
            if (label_idx != header.size())
                throw std::runtime_error("load_csv: duplicated label column '" + label_column + "'");
            label_idx = j;
        }
    }
    if (label_idx == header.size())
        throw std::runtime_error("load_csv: missing label column '" + label_column + "'");

    Dataset data;
    for (std::size_t j = 0; j < header.size(); ++j)
        if (j != label_idx) data.feature_names.push_back(header[j]);

    std::vector<double> row_buf(header.size() - 1);
    std::size_t row = 1;  // 1-based, header is row 0
    while (std::getline(in, line)) {
        if (trim(line).empty()) { ++row; continue; }
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error("load_csv: row " + std::to_string(row) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        std::size_t f = 0;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j == label_idx) continue;
            row_buf[f++] = parse_number(cells[j], row, header[j]);
        }
        const std::string label_cell = trim(cells[label_idx]);
        int label;
        if (label_cell == "0" || label_cell == "\"0\"") label = 0;
        else if (label_cell == "1" || label_cell == "\"1\"") label = 1;
        else
            throw std::runtime_error("load_csv: non-binary label '" + cells[label_idx] +
                                     "' at row " + std::to_string(row));
        data.features.append_row(row_buf);
        data.labels.push_back(label);
        ++row;
    }
    if (data.labels.empty())
        throw std::runtime_error("load_csv: no data rows in '" + path + "'");
    data.validate();
    return data;
}

ScalerParams fit_scaler(const Dataset& train) {
    if (train.size() == 0) throw std::invalid_argument("fit_scaler: empty dataset");
    const std::size_t d = train.dim();
    ScalerParams p;
    p.mins.assign(d, 0.0);
    p.maxs.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double lo = train.features(0, j);
        double hi = lo;
        for (std::size_t i = 1; i < train.size(); ++i) {
            lo = std::min(lo, train.features(i, j));
            hi = std::max(hi, train.features(i, j));
        }
        p.mins[j] = lo;
        p.maxs[j] = hi;
    }
    return p;
}

Dataset apply_scaler(const ScalerParams& params, const Dataset& data) {
    if (params.mins.size() != data.dim())
        throw std::invalid_argument("apply_scaler: dimension mismatch");
    Dataset out = data;
    for (std::size_t j = 0; j < data.dim(); ++j) {
        const double lo = params.mins[j];
        const double range = params.maxs[j] - lo;
        for (std::size_t i = 0; i < data.size(); ++i) {
            double v = range > 0.0 ? (data.features(i, j) - lo) / range : 0.0;
            out.features(i, j) = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

Dataset rebalance(const Dataset& train, std::uint64_t seed) {
    const std::size_t n1 = train.count_label(1);
    const std::size_t n0 = train.size() - n1;
    if (n0 == 0 || n1 == 0)
        throw std::invalid_argument("rebalance: both classes must be present");
    if (n0 == n1) return train;

    const int minority = n1 < n0 ? 1 : 0;
    std::vector<std::size_t> minority_rows;
    for (std::size_t i = 0; i < train.size(); ++i)
        if (train.labels[i] == minority) minority_rows.push_back(i);

    const std::size_t deficit = (n1 < n0 ? n0 - n1 : n1 - n0);
    auto rng = make_rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, minority_rows.size() - 1);

    Dataset out = train;
    for (std::size_t c = 0; c < deficit; ++c) {
        const std::size_t src = minority_rows[pick(rng)];
        out.features.append_row(train.features.row(src));
        out.labels.push_back(minority);
    }
    return out;
}

SplitSpec split_holdout(const Dataset& data, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("split_holdout: test_fraction must be in (0,1)");

    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < data.size(); ++i)
        by_class[data.labels[i]].push_back(i);

    SplitSpec split;
    split.seed = seed;
    auto rng = make_rng(seed);
    for (int c = 0; c < 2; ++c) {
        auto& rows = by_class[c];
        if (rows.empty())
            throw std::invalid_argument("split_holdout: class " + std::to_string(c) +
                                        " absent, cannot stratify");
        // Round to the nearest count so proportions stay within one object.
        const auto n_test = static_cast<std::size_t>(
            std::llround(test_fraction * static_cast<double>(rows.size())));
        if (n_test == 0 || n_test == rows.size())
            throw std::invalid_argument("split_holdout: class " + std::to_string(c) +
                                        " too small to stratify at fraction " +
                                        std::to_string(test_fraction));
        std::shuffle(rows.begin(), rows.end(), rng);
        for (std::size_t i = 0; i < rows.size(); ++i)
            (i < n_test ? split.test_indices : split.train_indices).push_back(rows[i]);
    }
    std::sort(split.train_indices.begin(), split.train_indices.end());
    std::sort(split.test_indices.begin(), split.test_indices.end());
    return split;
}

}  // namespace frauddet

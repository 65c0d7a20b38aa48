#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace frauddet {

/// Dense row-major matrix of doubles. Rows are observations, columns features.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("Matrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    std::span<const double> row(std::size_t i) const {
        assert(i < rows_);
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) {
        assert(i < rows_);
        return {data_.data() + i * cols_, cols_};
    }

    /// New matrix holding the given rows of this one, in the given order.
    Matrix take_rows(std::span<const std::size_t> indices) const {
        Matrix out(indices.size(), cols_);
        for (std::size_t r = 0; r < indices.size(); ++r) {
            assert(indices[r] < rows_);
            auto src = row(indices[r]);
            auto dst = out.row(r);
            for (std::size_t j = 0; j < cols_; ++j) dst[j] = src[j];
        }
        return out;
    }

    /// New matrix holding the given columns, in the given order.
    Matrix take_cols(std::span<const std::size_t> indices) const {
        Matrix out(rows_, indices.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t c = 0; c < indices.size(); ++c) {
                assert(indices[c] < cols_);
                out(i, c) = (*this)(i, indices[c]);
            }
        return out;
    }

    void append_row(std::span<const double> values) {
        if (rows_ == 0 && cols_ == 0) cols_ = values.size();
        if (values.size() != cols_)
            throw std::invalid_argument("Matrix::append_row: wrong width");
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

}  // namespace frauddet

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace adlab {

/// Dense row-major matrix of doubles. Rows are samples, columns features.
struct RowMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    RowMatrix() = default;
    RowMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }

    /// Copy with columns restricted to `keep`, in the given order.
    RowMatrix select_columns(const std::vector<std::size_t>& keep) const {
        RowMatrix out(rows, keep.size());
        for (std::size_t c = 0; c < keep.size(); ++c) {
            if (keep[c] >= cols) throw std::out_of_range("select_columns: bad index");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < keep.size(); ++c) {
                out.at(r, c) = at(r, keep[c]);
            }
        }
        return out;
    }

    /// Copy with rows restricted to `keep`, in the given order.
    RowMatrix select_rows(const std::vector<std::size_t>& keep) const {
        RowMatrix out(keep.size(), cols);
        for (std::size_t r = 0; r < keep.size(); ++r) {
            if (keep[r] >= rows) throw std::out_of_range("select_rows: bad index");
            auto src = row(keep[r]);
            std::copy(src.begin(), src.end(), out.row(r).begin());
        }
        return out;
    }
};

} // namespace adlab

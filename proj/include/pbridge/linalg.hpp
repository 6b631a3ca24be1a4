#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "pbridge/logvalue.hpp"

namespace pbridge {

// Row-major dense matrix, just enough for the determinant and DPP work here.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// Determinant by LU with partial pivoting; destroys a copy.
double det_lu(Matrix a);

// Determinant of a matrix given in signed-log entries. Each row is scaled by
// its largest log magnitude before ordinary LU, so entries spanning hundreds
// of orders of magnitude stay representable.
LogValue log_det_lu(const std::vector<std::vector<LogValue>>& entries);

}  // namespace pbridge

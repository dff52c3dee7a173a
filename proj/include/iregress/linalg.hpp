#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace iregress {

// Dense row-major matrix, just big enough for the small systems that show
// up here (sign-pattern normal equations, OLS/NNLS designs).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_.data() + i * cols_, cols_);
    }

    double max_abs() const;

    // A^T * A and A^T * y for least squares normal equations.
    Matrix gram() const;
    std::vector<double> transpose_times(std::span<const double> y) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Solves A x = b by LU with partial pivoting. Returns nullopt when a pivot
// falls below pivot_rtol relative to the largest entry of A (treated as
// singular).
std::optional<std::vector<double>> solve_linear(Matrix a, std::vector<double> b,
                                                double pivot_rtol = 1e-12);

// Unconstrained least squares min ||A x - y||^2 via the normal equations.
std::optional<std::vector<double>> solve_least_squares(const Matrix& a,
                                                       std::span<const double> y);

// Neumaier compensated accumulator; keeps aggregation independent of the
// summation batching used by worker threads.
class CompensatedSum {
public:
    void add(double value) {
        double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace iregress

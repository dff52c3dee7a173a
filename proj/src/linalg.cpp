#include "iregress/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace iregress {

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Matrix Matrix::gram() const {
    Matrix g(cols_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) {
            for (std::size_t k = j; k < cols_; ++k) {
                g(j, k) += r[j] * r[k];
            }
        }
    }
    for (std::size_t j = 0; j < cols_; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            g(j, k) = g(k, j);
        }
    }
    return g;
}

std::vector<double> Matrix::transpose_times(std::span<const double> y) const {
    std::vector<double> out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) {
            out[j] += r[j] * y[i];
        }
    }
    return out;
}

std::optional<std::vector<double>> solve_linear(Matrix a, std::vector<double> b,
                                                double pivot_rtol) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n || b.size() != n) return std::nullopt;

    const double scale = a.max_abs();
    if (scale == 0.0) return std::nullopt;
    const double pivot_floor = pivot_rtol * scale;

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        double best_abs = std::abs(a(perm[col], col));
        for (std::size_t r = col + 1; r < n; ++r) {
            double v = std::abs(a(perm[r], col));
            if (v > best_abs) {
                best_abs = v;
                best = r;
            }
        }
        if (best_abs <= pivot_floor) return std::nullopt;
        std::swap(perm[col], perm[best]);

        const double pivot = a(perm[col], col);
        for (std::size_t r = col + 1; r < n; ++r) {
            double factor = a(perm[r], col) / pivot;
            if (factor == 0.0) continue;
            a(perm[r], col) = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) {
                a(perm[r], c) -= factor * a(perm[col], c);
            }
            b[perm[r]] -= factor * b[perm[col]];
        }
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[perm[i]];
        for (std::size_t c = i + 1; c < n; ++c) s -= a(perm[i], c) * x[c];
        x[i] = s / a(perm[i], i);
    }
    return x;
}

std::optional<std::vector<double>> solve_least_squares(const Matrix& a,
                                                       std::span<const double> y) {
    if (a.rows() != y.size()) return std::nullopt;
    return solve_linear(a.gram(), a.transpose_times(y));
}

}  // namespace iregress

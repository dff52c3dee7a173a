#pragma once

// Test-only oracle: exhaustive minimization of the interval least squares
// loss over sign vectors in {-1,0,+1}^p. For a fixed sign vector the loss
// is an ordinary least squares problem on 2n stacked rows (centers, then
// sign-weighted radii); each is solved with a local Gauss-Jordan so the
// route shares no code with the implementation under test.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "iregress/dataset.hpp"

namespace iregress::testsupport {

struct OracleFit {
    std::vector<double> a;
    double b = 0.0, mu = 0.0, objective = 0.0;
};

inline bool oracle_gauss_jordan(std::vector<std::vector<double>>& m, std::vector<double>& rhs) {
    const std::size_t k = rhs.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        }
        if (std::abs(m[piv][col]) < 1e-11) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        double d = m[col][col];
        for (std::size_t c = 0; c < k; ++c) m[col][c] /= d;
        rhs[col] /= d;
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = m[r][col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < k; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    return true;
}

inline double oracle_loss(const IntervalDataset& data, const std::vector<double>& a, double b,
                          double mu) {
    double total = 0.0;
    for (std::size_t i = 0; i < data.n_obs(); ++i) {
        double c = b, r = mu;
        for (std::size_t j = 0; j < a.size(); ++j) {
            c += a[j] * data.predictor(j)[i].center;
            r += std::abs(a[j]) * data.predictor(j)[i].radius;
        }
        double dc = c - data.response()[i].center;
        double dr = r - data.response()[i].radius;
        total += dc * dc + dr * dr;
    }
    return total / static_cast<double>(data.n_obs());
}

inline std::optional<OracleFit> oracle_global_minimum(const IntervalDataset& data) {
    const std::size_t p = data.n_predictors();
    const std::size_t n = data.n_obs();
    std::optional<OracleFit> best;

    std::vector<int> signs(p, -1);
    std::size_t total = 1;
    for (std::size_t j = 0; j < p; ++j) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t rem = code;
        for (std::size_t j = 0; j < p; ++j) {
            signs[j] = static_cast<int>(rem % 3) - 1;  // -1, 0, +1
            rem /= 3;
        }
        std::vector<std::size_t> active;
        for (std::size_t j = 0; j < p; ++j) {
            if (signs[j] != 0) active.push_back(j);
        }
        const std::size_t k = active.size() + 2;  // slopes + b + mu

        std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
        std::vector<double> atb(k, 0.0);
        std::vector<double> row(k);
        auto accumulate = [&](const std::vector<double>& r, double y) {
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j2 = 0; j2 < k; ++j2) ata[i][j2] += r[i] * r[j2];
                atb[i] += r[i] * y;
            }
        };
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t jj = 0; jj < active.size(); ++jj) {
                row[jj] = data.predictor(active[jj])[i].center;
            }
            row[active.size()] = 1.0;
            row[active.size() + 1] = 0.0;
            accumulate(row, data.response()[i].center);
            for (std::size_t jj = 0; jj < active.size(); ++jj) {
                row[jj] = signs[active[jj]] * data.predictor(active[jj])[i].radius;
            }
            row[active.size()] = 0.0;
            row[active.size() + 1] = 1.0;
            accumulate(row, data.response()[i].radius);
        }
        if (!oracle_gauss_jordan(ata, atb)) continue;

        std::vector<double> a(p, 0.0);
        bool consistent = true;
        for (std::size_t jj = 0; jj < active.size(); ++jj) {
            a[active[jj]] = atb[jj];
            if (signs[active[jj]] * atb[jj] < 0.0) consistent = false;
        }
        if (!consistent) continue;
        OracleFit cand;
        cand.a = a;
        cand.b = atb[active.size()];
        cand.mu = atb[active.size() + 1];
        cand.objective = oracle_loss(data, cand.a, cand.b, cand.mu);
        if (!best || cand.objective < best->objective) best = cand;
    }
    return best;
}

}  // namespace iregress::testsupport

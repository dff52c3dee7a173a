#include "iregress/ccrm.hpp"

#include <algorithm>
#include <cmath>

namespace iregress {

namespace {

Matrix columns_subset(const Matrix& a, const std::vector<std::size_t>& cols) {
    Matrix sub(a.rows(), cols.size());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            sub(i, j) = a(i, cols[j]);
        }
    }
    return sub;
}

// Dual vector of the active-set method: A^T (y - A x).
std::vector<double> dual_vector(const Matrix& a, std::span<const double> y,
                                const std::vector<double>& x) {
    std::vector<double> residual(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double ax = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) ax += a(i, j) * x[j];
        residual[i] = y[i] - ax;
    }
    return a.transpose_times(residual);
}

}  // namespace

std::vector<double> nnls(const Matrix& a, std::span<const double> y, NnlsOptions opts) {
    const std::size_t m = a.rows();
    const std::size_t q = a.cols();
    if (m == 0 || q == 0) throw DimensionMismatch("nnls needs a nonempty design");
    if (y.size() != m) throw LengthMismatch("nnls: response length does not match design rows");
    const std::size_t max_iter = opts.max_iterations ? opts.max_iterations : 3 * q;

    std::vector<double> x(q, 0.0);
    std::vector<bool> passive(q, false);
    // Columns rejected while x is unchanged (near-dependent or with a
    // non-improving trial coefficient) stay masked until x moves.
    std::vector<bool> masked(q, false);
    std::size_t iterations = 0;

    while (true) {
        const std::vector<double> w = dual_vector(a, y, x);
        std::size_t enter = q;
        double wmax = 0.0;
        for (std::size_t k = 0; k < q; ++k) {
            if (!passive[k] && !masked[k] && w[k] > wmax) {
                wmax = w[k];
                enter = k;
            }
        }
        if (enter == q) return x;  // KKT: every free dual component <= 0

        passive[enter] = true;
        std::vector<std::size_t> pset;
        for (std::size_t k = 0; k < q; ++k) {
            if (passive[k]) pset.push_back(k);
        }
        auto z = solve_least_squares(columns_subset(a, pset), y);
        bool accept = z.has_value();
        if (accept) {
            for (std::size_t j = 0; j < pset.size(); ++j) {
                if (pset[j] == enter && (*z)[j] <= 0.0) accept = false;
            }
        }
        if (!accept) {
            passive[enter] = false;
            masked[enter] = true;
            continue;
        }

        // Feasibility restoration: interpolate toward z, dropping variables
        // that hit the boundary, until the passive solution is positive.
        while (true) {
            double alpha = 2.0;
            std::size_t block = q;
            for (std::size_t j = 0; j < pset.size(); ++j) {
                if ((*z)[j] <= 0.0) {
                    double t = x[pset[j]] / (x[pset[j]] - (*z)[j]);
                    if (t < alpha) {
                        alpha = t;
                        block = pset[j];
                    }
                }
            }
            if (block == q) {
                for (std::size_t j = 0; j < pset.size(); ++j) x[pset[j]] = (*z)[j];
                break;
            }
            if (++iterations > max_iter) {
                throw IterationLimit("nnls exceeded " + std::to_string(max_iter) +
                                     " active-set iterations");
            }
            for (std::size_t j = 0; j < pset.size(); ++j) {
                x[pset[j]] += alpha * ((*z)[j] - x[pset[j]]);
            }
            x[block] = 0.0;
            passive[block] = false;
            // Any passive coefficient pushed to or past zero by rounding
            // leaves with it.
            std::vector<std::size_t> kept;
            for (std::size_t idx : pset) {
                if (passive[idx] && x[idx] > 0.0) {
                    kept.push_back(idx);
                } else {
                    x[idx] = 0.0;
                    passive[idx] = false;
                }
            }
            pset = std::move(kept);
            if (pset.empty()) break;
            z = solve_least_squares(columns_subset(a, pset), y);
            if (!z) break;  // degenerate reduced system; x is still feasible
        }
        std::fill(masked.begin(), masked.end(), false);
    }
}

CcrmFit fit_ccrm(const IntervalDataset& data) {
    const std::size_t n = data.n_obs();
    const std::size_t p = data.n_predictors();
    if (n <= p + 1) {
        throw TooFewRows("fit_ccrm needs n > p + 1, got n = " + std::to_string(n) +
                         ", p = " + std::to_string(p));
    }

    Matrix design_c(n, p + 1), design_r(n, p + 1);
    std::vector<double> yc(n), yr(n);
    for (std::size_t i = 0; i < n; ++i) {
        design_c(i, 0) = 1.0;
        design_r(i, 0) = 1.0;
        for (std::size_t j = 0; j < p; ++j) {
            design_c(i, j + 1) = data.predictor(j)[i].center;
            design_r(i, j + 1) = data.predictor(j)[i].radius;
        }
        yc[i] = data.response()[i].center;
        yr[i] = data.response()[i].radius;
    }

    auto beta_c = solve_least_squares(design_c, yc);
    if (!beta_c) throw RankDeficient("ccrm center design matrix is rank deficient");

    CcrmFit fit;
    fit.beta_c = std::move(*beta_c);
    fit.beta_r = nnls(design_r, yr);
    return fit;
}

Prediction ccrm_predict(const CcrmFit& fit, std::span<const Interval> x) {
    if (x.size() + 1 != fit.beta_c.size()) {
        throw DimensionMismatch("ccrm_predict: predictor count does not match fit");
    }
    Prediction p;
    p.center = fit.beta_c[0];
    p.radius_raw = fit.beta_r[0];
    for (std::size_t j = 0; j < x.size(); ++j) {
        p.center += fit.beta_c[j + 1] * x[j].center;
        p.radius_raw += fit.beta_r[j + 1] * x[j].radius;
    }
    p.radius = p.radius_raw;
    p.negative_radius = p.radius_raw < 0.0;
    return p;
}

}  // namespace iregress

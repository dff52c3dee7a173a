#pragma once

#include <span>
#include <vector>

#include "iregress/dataset.hpp"
#include "iregress/fit.hpp"
#include "iregress/linalg.hpp"

namespace iregress {

// Constrained center-and-range baseline: unconstrained OLS on the centers,
// nonnegative least squares on the radii (every radius coefficient,
// intercept included, constrained >= 0).
struct CcrmFit {
    std::vector<double> beta_c;  // intercept first, then slopes
    std::vector<double> beta_r;  // all entries >= 0
};

struct NnlsOptions {
    // 0 means the default cap of 3 * q active-set iterations.
    std::size_t max_iterations = 0;
};

// Lawson-Hanson style active set. Returns x >= 0 minimizing ||A x - y||^2;
// throws IterationLimit past the cap.
std::vector<double> nnls(const Matrix& a, std::span<const double> y, NnlsOptions opts = {});

CcrmFit fit_ccrm(const IntervalDataset& data);

Prediction ccrm_predict(const CcrmFit& fit, std::span<const Interval> x);

}  // namespace iregress

#pragma once

#include <span>
#include <vector>

#include "iregress/dataset.hpp"
#include "iregress/fit.hpp"

namespace iregress {

struct SumsOfSquares {
    double sst = 0.0;
    double sse = 0.0;
    double ssr = 0.0;
};

// Center and radius deviations jointly, against the sample mean of the
// observed response. SSR pairs the radius residual with the radius fitted
// value; the decomposition SST = SSE + SSR holds only at least squares fits.
// The Prediction overload uses the raw (possibly negative) fitted radii,
// which is what the decomposition is stated for.
SumsOfSquares sums_of_squares(const IntervalDataset& data, std::span<const Interval> fitted);
SumsOfSquares sums_of_squares(const IntervalDataset& data, std::span<const Prediction> fitted);

// 1 - SSR/SST. Equals SSE/SST at a least squares fit.
double r_squared(const SumsOfSquares& ss);

struct Residuals {
    std::vector<double> center;
    std::vector<double> radius;
    double mean_center = 0.0;
    double mean_radius = 0.0;
};

Residuals residuals(const IntervalDataset& data, const FitResult& fit);

// Markov bound sigma2_eta / (Y_i^r)^2 on the probability of a negative
// predicted radius, per observation. Observations with zero radius carry no
// bound and are excluded from the mean.
struct NegativeRadiusBound {
    std::vector<double> per_obs;  // +inf where unbounded
    double mean_bound = 0.0;      // over bounded entries
    std::size_t unbounded_count = 0;
};

NegativeRadiusBound negative_radius_bound(const FitResult& fit, const IntervalDataset& data);

struct Diagnostics {
    double sst = 0.0;
    double sse = 0.0;
    double ssr = 0.0;
    double r2 = 0.0;
    double sigma2_lambda = 0.0;
    double sigma2_eta = 0.0;
    double neg_radius_bound_mean = 0.0;
    std::size_t neg_radius_count = 0;  // raw fitted radii below zero
    Residuals res;
};

Diagnostics compute_diagnostics(const IntervalDataset& data, const FitResult& fit);

}  // namespace iregress

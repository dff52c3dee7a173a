#pragma once

#include <span>

#include "iregress/dataset.hpp"
#include "iregress/linalg.hpp"

namespace iregress {

// Divisor-n sample means and covariances of the centers and radii of
// (X_1, ..., X_p, Y). Index convention: 0..p-1 are the predictors, index p
// is the response.
struct SampleMoments {
    std::vector<double> mean_c;
    std::vector<double> mean_r;
    Matrix cov_c;
    Matrix cov_r;

    std::size_t response_index() const { return mean_c.size() - 1; }

    double var_c(std::size_t j) const { return cov_c(j, j); }
    double var_r(std::size_t j) const { return cov_r(j, j); }
    double cov_c_with_response(std::size_t j) const { return cov_c(j, response_index()); }
    double cov_r_with_response(std::size_t j) const { return cov_r(j, response_index()); }
};

SampleMoments sample_moments(const IntervalDataset& data);

// Pairwise-difference form (1/n^2) sum_{i<j} (x_i-x_j)(y_i-y_j). Kept as an
// independent O(n^2) route for the divisor-n covariance; tests assert the two
// agree.
double pairwise_cov(std::span<const double> xs, std::span<const double> ys);

}  // namespace iregress

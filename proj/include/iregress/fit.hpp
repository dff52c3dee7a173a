#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iregress/dataset.hpp"
#include "iregress/moments.hpp"

namespace iregress {

// Which restricted problem produced the returned coefficients. Univariate
// fits report a half-space; multivariate fits report the winning sign
// pattern (+1/-1 per coefficient). For p = 1 the two encodings coincide:
// pattern {+1} is the plus half-space and {-1} the minus one.
struct Branch {
    enum class Kind { PlusHalfSpace, MinusHalfSpace, SignPattern };
    Kind kind = Kind::PlusHalfSpace;
    std::vector<int> signs;

    std::string to_string() const;
    bool same_selection(const Branch& other) const;
};

struct FitResult {
    std::vector<double> a;
    double b = 0.0;
    double mu = 0.0;
    double sigma2_lambda = 0.0;  // divisor n-1 center residual variance
    double sigma2_eta = 0.0;     // divisor n-1 radius residual variance
    double objective = 0.0;      // L/n at the stored coefficients
    Branch branch;
    // Multivariate metadata: how many sign patterns were admissible, and
    // whether a second admissible solution tied the minimum.
    std::size_t admissible_patterns = 1;
    bool ambiguous_minimum = false;
};

// A nonexistent least squares solution is a legitimate outcome (radius
// covariance dominating with the wrong sign), so it travels as a value.
struct NoSolutionInfo {
    std::string reason;
};

struct FitOutcome {
    std::optional<FitResult> result;
    std::optional<NoSolutionInfo> no_solution;

    bool ok() const { return result.has_value(); }
    const FitResult& fit() const { return *result; }
};

struct HalfSpaceTriple {
    double a = 0.0;
    double b = 0.0;
    double mu = 0.0;
};

struct HalfSpaceSolutions {
    HalfSpaceTriple plus;   // slope restricted to a >= 0
    HalfSpaceTriple minus;  // slope restricted to a < 0
};

// Mean squared delta-loss (1/n) sum_i delta^2(Y_i, Yhat_i) at the given
// coefficients.
double objective_value(const IntervalDataset& data, std::span<const double> a, double b,
                       double mu);

// Both candidate triples for p = 1 (closed forms from the covariance
// moments). Throws DegenerateVariance when the predictor has no dispersion
// in either the centers or the radii.
HalfSpaceSolutions half_space_solutions(const IntervalDataset& data);
HalfSpaceSolutions half_space_solutions(const SampleMoments& m);

// Analytical univariate fit with the full existence case analysis.
FitOutcome fit_univariate(const IntervalDataset& data);

// Sign-pattern enumeration over {-1,+1}^p: solves the coupled normal
// equations per pattern, keeps the sign-consistent solutions, and returns
// the one with the smallest objective. p is capped (2^p patterns).
inline constexpr std::size_t kMaxSignPatternPredictors = 16;
FitOutcome fit_multivariate(const IntervalDataset& data);

struct Prediction {
    double center = 0.0;
    double radius = 0.0;        // after clamping when clamp was requested
    double radius_raw = 0.0;    // mu + sum |a_j| x_j^r, may be negative
    bool negative_radius = false;
    bool clamped = false;

    Interval as_interval() const { return Interval(center, radius < 0.0 ? 0.0 : radius); }
};

Prediction predict(const FitResult& fit, std::span<const Interval> x, bool clamp);

// Raw (unclamped) fitted values on the training data.
std::vector<Prediction> fitted_values(const IntervalDataset& data, const FitResult& fit);

// Closed-form finite-sample biases of the univariate slope estimate given
// the probability of selecting the wrong half-space.
struct BiasEstimate {
    double bias_a = 0.0;      // E(a_hat - a)
    double bias_abs_a = 0.0;  // E(|a_hat| - |a|)
};

BiasEstimate bias_formula(double a, double s2_xc, double s2_xr, double p_wrong);

}  // namespace iregress

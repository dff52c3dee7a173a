#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iregress/dataset.hpp"
#include "iregress/rng.hpp"

namespace iregress {

struct DistributionSpec {
    enum class Family { Uniform, Normal };
    Family family = Family::Uniform;
    double p1 = 0.0;  // uniform: lower; normal: mean
    double p2 = 1.0;  // uniform: upper; normal: sd

    static DistributionSpec make_uniform(double lo, double hi) {
        return {Family::Uniform, lo, hi};
    }
    static DistributionSpec make_normal(double mean, double sd) {
        return {Family::Normal, mean, sd};
    }
    // Family with the requested mean and standard deviation (uniform spreads
    // to [m - s*sqrt(3), m + s*sqrt(3)]).
    static DistributionSpec with_moments(Family f, double mean, double sd);

    double sample(RngStream& rng) const;
    double mean() const;

    std::string to_string() const;
    // Parses "uniform(lo,hi)" or "normal(mean,sd)".
    static DistributionSpec parse(const std::string& text);
};

struct PredictorLaw {
    DistributionSpec center = DistributionSpec::make_uniform(0.0, 10.0);
    DistributionSpec radius = DistributionSpec::make_uniform(0.5, 2.5);
};

struct SimulationConfig {
    std::string label = "custom";
    std::vector<double> a = {2.0};
    double b = 5.0;
    double mu = 0.5;
    double sigma_lambda = 2.0;
    double sigma_eta = 0.3;
    std::size_t n = 100;
    std::vector<PredictorLaw> predictor_laws;  // resized to p on validate
    DistributionSpec::Family error_family = DistributionSpec::Family::Normal;
    std::uint64_t seed = 0;
    std::size_t replications = 1000;

    std::size_t p() const { return a.size(); }
    // Throws ConfigError naming the offending field.
    void validate() const;
    SimulationConfig with_n(std::size_t n_obs) const;
};

// Presets for the six generative models studied here (1-based). Each fixes
// (a, b, mu, sigma_lambda, sigma_eta); the predictor laws are calibrated
// choices and can be overridden per study.
SimulationConfig model_preset(int which);

struct GenerationStats {
    std::size_t observations = 0;
    std::size_t eta_redraws = 0;     // rejected draws that would give Y^r < 0
    std::size_t radius_redraws = 0;  // rejected draws that would give X^r < 0
    double eta_sum = 0.0;            // accepted eta values, for drift reporting
};

// Draws one dataset from the generative model. Radii are kept nonnegative by
// per-observation rejection; more than 1000 redraws for a single observation
// raises RejectionBudgetExceeded (the config is infeasible).
IntervalDataset generate_sample(const SimulationConfig& config, RngStream& rng,
                                GenerationStats* stats = nullptr);

struct MetricSummary {
    double mae = 0.0;
    double mae_se = 0.0;
    double me = 0.0;
    double me_se = 0.0;
};

struct ParameterStudyCell {
    std::string model;
    std::size_t n = 0;
    std::size_t replications = 0;
    std::size_t used = 0;          // replications with a returned fit
    std::size_t no_solution = 0;   // case-(iv) replications, excluded
    double true_a = 0.0;
    double true_b = 0.0;
    double true_mu = 0.0;
    MetricSummary a, b, mu;
    double p_wrong_hat = 0.0;      // frequency of the wrong half-space branch
    double predicted_me_a = 0.0;   // conditional-on-X bias averaged over reps
    double me_minus_predicted = 0.0;
    double me_minus_predicted_se = 0.0;
    double redraw_rate = 0.0;      // eta redraws per generated observation
    double eta_mean_shift = 0.0;   // realized mean(eta) - mu
};

struct ParameterStudyReport {
    std::uint64_t seed = 0;
    std::size_t replications = 0;
    std::vector<ParameterStudyCell> cells;
};

// Generate -> fit -> record (a_hat - a, b_hat - b, mu_hat - mu) per
// replication; univariate configs only.
ParameterStudyReport run_parameter_study(const std::vector<SimulationConfig>& configs,
                                         std::size_t replications);

struct AmseSummary {
    double center = 0.0;
    double center_se = 0.0;
    double radius = 0.0;
    double radius_se = 0.0;
    double average = 0.0;
    double average_se = 0.0;
};

struct ComparisonStudyCell {
    std::string model;
    std::size_t n = 0;
    std::size_t replications = 0;
    std::size_t used = 0;
    std::size_t no_solution = 0;
    std::size_t degenerate_validation = 0;
    AmseSummary ours;
    AmseSummary ccrm;
    double redraw_rate = 0.0;
};

struct ComparisonStudyReport {
    std::uint64_t seed = 0;
    std::size_t replications = 0;
    double split = 0.8;
    std::vector<ComparisonStudyCell> cells;
};

// Per replication: random train/validation split, fit both our model and
// CCRM on the training part, score AMSE on the validation part. split is
// the training fraction.
ComparisonStudyReport run_comparison_study(const std::vector<SimulationConfig>& configs,
                                           std::size_t replications, double split = 0.8);

// Fraction of replications whose selected branch disagrees with sgn(a).
double estimate_wrong_branch_probability(const SimulationConfig& config,
                                         std::size_t replications);

// Worker count for replication loops: IREGRESS_THREADS, 0/unset = auto.
std::size_t simulation_threads();

}  // namespace iregress

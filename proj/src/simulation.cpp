#include "iregress/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "iregress/ccrm.hpp"
#include "iregress/fit.hpp"
#include "iregress/linalg.hpp"
#include "iregress/moments.hpp"

namespace iregress {

namespace {

constexpr std::size_t kRejectionBudget = 1000;

double parse_number(const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw ConfigError("trailing characters in number: '" + s + "'");
    return v;
}

}  // namespace

DistributionSpec DistributionSpec::with_moments(Family f, double mean, double sd) {
    if (f == Family::Normal) return make_normal(mean, sd);
    const double h = sd * std::sqrt(3.0);
    return make_uniform(mean - h, mean + h);
}

double DistributionSpec::sample(RngStream& rng) const {
    return family == Family::Uniform ? rng.uniform(p1, p2) : rng.normal(p1, p2);
}

double DistributionSpec::mean() const {
    return family == Family::Uniform ? 0.5 * (p1 + p2) : p1;
}

std::string DistributionSpec::to_string() const {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return std::string(buf);
    };
    return (family == Family::Uniform ? "uniform(" : "normal(") + fmt(p1) + "," + fmt(p2) + ")";
}

DistributionSpec DistributionSpec::parse(const std::string& text) {
    auto open = text.find('(');
    auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        throw ConfigError("distribution must look like uniform(lo,hi) or normal(mean,sd): '" +
                          text + "'");
    }
    std::string name = text.substr(0, open);
    std::string args = text.substr(open + 1, close - open - 1);
    auto comma = args.find(',');
    if (comma == std::string::npos) {
        throw ConfigError("distribution needs two parameters: '" + text + "'");
    }
    double p1 = parse_number(args.substr(0, comma));
    double p2 = parse_number(args.substr(comma + 1));
    if (name == "uniform") {
        if (p2 < p1) throw ConfigError("uniform upper bound below lower: '" + text + "'");
        return make_uniform(p1, p2);
    }
    if (name == "normal") {
        if (p2 < 0.0) throw ConfigError("normal sd must be >= 0: '" + text + "'");
        return make_normal(p1, p2);
    }
    throw ConfigError("unknown distribution family '" + name + "'");
}

void SimulationConfig::validate() const {
    if (a.empty()) throw ConfigError("config.a: at least one slope is required");
    if (!(sigma_lambda > 0.0)) throw ConfigError("config.sigma_lambda: must be > 0");
    if (!(sigma_eta > 0.0)) throw ConfigError("config.sigma_eta: must be > 0");
    if (n < 2) throw ConfigError("config.n: must be >= 2");
    if (replications < 1) throw ConfigError("config.replications: must be >= 1");
    if (!predictor_laws.empty() && predictor_laws.size() != a.size()) {
        throw ConfigError("config.predictor_laws: need one law per predictor");
    }
}

SimulationConfig SimulationConfig::with_n(std::size_t n_obs) const {
    SimulationConfig c = *this;
    c.n = n_obs;
    return c;
}

SimulationConfig model_preset(int which) {
    SimulationConfig c;
    c.label = "model" + std::to_string(which);
    switch (which) {
        case 1:
            c.a = {2.0};
            c.mu = 0.5;
            c.sigma_lambda = 2.0;
            c.sigma_eta = 0.3;
            c.predictor_laws = {{DistributionSpec::make_uniform(0.0, 0.65),
                                 DistributionSpec::make_uniform(0.5, 2.5)}};
            break;
        case 2:
            c.a = {-2.0};
            c.mu = 0.5;
            c.sigma_lambda = 3.0;
            c.sigma_eta = 0.3;
            c.predictor_laws = {{DistributionSpec::make_uniform(0.0, 1.0),
                                 DistributionSpec::make_uniform(0.5, 2.5)}};
            break;
        case 3:
            c.a = {2.0};
            c.mu = -0.5;
            c.sigma_lambda = 2.0;
            c.sigma_eta = 0.3;
            c.predictor_laws = {{DistributionSpec::make_uniform(0.0, 0.65),
                                 DistributionSpec::make_uniform(0.5, 2.5)}};
            break;
        case 4:
            c.a = {3.0};
            c.mu = -5.0;
            c.sigma_lambda = 5.0;
            c.sigma_eta = 0.5;
            c.predictor_laws = {{DistributionSpec::make_uniform(0.0, 10.0),
                                 DistributionSpec::make_uniform(2.0, 4.0)}};
            break;
        case 5:
            c.a = {-3.0};
            c.mu = -5.0;
            c.sigma_lambda = 5.0;
            c.sigma_eta = 0.5;
            c.predictor_laws = {{DistributionSpec::make_uniform(0.0, 10.0),
                                 DistributionSpec::make_uniform(2.0, 4.0)}};
            break;
        case 6:
            c.a = {-3.0, 2.0};
            c.mu = -5.0;
            c.sigma_lambda = 5.0;
            c.sigma_eta = 0.5;
            c.predictor_laws = {{DistributionSpec::make_uniform(0.0, 15.0),
                                 DistributionSpec::make_uniform(2.0, 4.0)},
                                {DistributionSpec::make_uniform(0.0, 15.0),
                                 DistributionSpec::make_uniform(2.0, 4.0)}};
            break;
        default:
            throw ConfigError("unknown preset model" + std::to_string(which) +
                              " (expected 1..6)");
    }
    c.b = 5.0;
    return c;
}

IntervalDataset generate_sample(const SimulationConfig& config, RngStream& rng,
                                GenerationStats* stats) {
    config.validate();
    const std::size_t p = config.p();
    const std::size_t n = config.n;
    std::vector<PredictorLaw> laws = config.predictor_laws;
    if (laws.empty()) laws.resize(p);

    const auto lambda_law =
        DistributionSpec::with_moments(config.error_family, 0.0, config.sigma_lambda);
    const auto eta_law =
        DistributionSpec::with_moments(config.error_family, config.mu, config.sigma_eta);

    std::vector<std::vector<Interval>> xs(p, std::vector<Interval>(n));
    std::vector<Interval> ys(n);

    // Fixed draw order per observation: (X^c_j, X^r_j) for j = 1..p, then
    // lambda, then eta with its rejection retries.
    for (std::size_t i = 0; i < n; ++i) {
        double radius_part = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            double xc = laws[j].center.sample(rng);
            double xr = laws[j].radius.sample(rng);
            std::size_t tries = 0;
            while (xr < 0.0) {
                if (++tries > kRejectionBudget) {
                    throw RejectionBudgetExceeded(
                        "predictor radius law keeps producing negatives; fix config." +
                        std::string("predictor_laws[") + std::to_string(j) + "].radius");
                }
                if (stats) ++stats->radius_redraws;
                xr = laws[j].radius.sample(rng);
            }
            xs[j][i] = Interval(xc, xr);
            radius_part += std::abs(config.a[j]) * xr;
        }
        double lambda = lambda_law.sample(rng);
        double eta = eta_law.sample(rng);
        std::size_t tries = 0;
        while (radius_part + eta < 0.0) {
            if (++tries > kRejectionBudget) {
                throw RejectionBudgetExceeded(
                    "Y^r rejection budget exhausted at observation " + std::to_string(i) +
                    "; the configured mu/sigma_eta cannot produce nonnegative radii");
            }
            if (stats) ++stats->eta_redraws;
            eta = eta_law.sample(rng);
        }
        double center = config.b + lambda;
        for (std::size_t j = 0; j < p; ++j) center += config.a[j] * xs[j][i].center;
        ys[i] = Interval(center, radius_part + eta);
        if (stats) {
            ++stats->observations;
            stats->eta_sum += eta;
        }
    }
    return IntervalDataset::make(std::move(xs), std::move(ys));
}

std::size_t simulation_threads() {
    const char* env = std::getenv("IREGRESS_THREADS");
    if (env && *env) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

namespace {

// Runs fn(r) for r in [0, count) on the worker pool. Results must go into
// preallocated per-replication slots; reductions happen afterwards in index
// order so the outcome is identical for any thread count.
template <typename Fn>
void parallel_replications(std::size_t count, Fn&& fn) {
    std::size_t workers = std::min(simulation_threads(), count);
    if (workers <= 1) {
        for (std::size_t r = 0; r < count; ++r) fn(r);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        while (true) {
            std::size_t r = next.fetch_add(1);
            if (r >= count) return;
            try {
                fn(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

// Compensated two-pass mean and standard error over the flagged entries.
template <typename Pick>
MeanSe reduce_mean_se(const std::vector<char>& use, std::size_t count, Pick&& pick) {
    CompensatedSum sum;
    std::size_t m = 0;
    for (std::size_t r = 0; r < count; ++r) {
        if (!use[r]) continue;
        sum.add(pick(r));
        ++m;
    }
    MeanSe out;
    if (m == 0) return out;
    out.mean = sum.value() / static_cast<double>(m);
    if (m > 1) {
        CompensatedSum sq;
        for (std::size_t r = 0; r < count; ++r) {
            if (!use[r]) continue;
            double d = pick(r) - out.mean;
            sq.add(d * d);
        }
        double var = sq.value() / static_cast<double>(m - 1);
        out.se = std::sqrt(var / static_cast<double>(m));
    }
    return out;
}

std::uint64_t cell_stream_index(std::size_t cell, std::size_t rep) {
    return (static_cast<std::uint64_t>(cell) << 32) | static_cast<std::uint64_t>(rep);
}

bool branch_is_wrong(double true_a, const Branch& branch) {
    if (true_a >= 0.0) return branch.kind == Branch::Kind::MinusHalfSpace;
    return branch.kind == Branch::Kind::PlusHalfSpace;
}

}  // namespace

ParameterStudyReport run_parameter_study(const std::vector<SimulationConfig>& configs,
                                         std::size_t replications) {
    if (replications < 1) throw ConfigError("replications: must be >= 1");
    ParameterStudyReport report;
    report.replications = replications;
    if (!configs.empty()) report.seed = configs.front().seed;

    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        const SimulationConfig& config = configs[ci];
        config.validate();
        if (config.p() != 1) {
            throw ConfigError("config.a: parameter study requires a univariate model");
        }

        struct Slot {
            char ok = 0;
            double err_a = 0, err_b = 0, err_mu = 0;
            char wrong = 0;
            double predicted = 0;  // bias_formula at this replication's moments
            std::size_t eta_redraws = 0;
            std::size_t observations = 0;
            double eta_sum = 0;
        };
        std::vector<Slot> slots(replications);

        parallel_replications(replications, [&](std::size_t r) {
            RngStream rng(config.seed, cell_stream_index(ci, r));
            GenerationStats gen;
            IntervalDataset data = generate_sample(config, rng, &gen);
            Slot& s = slots[r];
            s.eta_redraws = gen.eta_redraws;
            s.observations = gen.observations;
            s.eta_sum = gen.eta_sum;
            FitOutcome outcome = fit_univariate(data);
            if (!outcome.ok()) return;  // counted, excluded from aggregates
            const FitResult& fit = outcome.fit();
            s.ok = 1;
            s.err_a = fit.a[0] - config.a[0];
            s.err_b = fit.b - config.b;
            s.err_mu = fit.mu - config.mu;
            s.wrong = branch_is_wrong(config.a[0], fit.branch) ? 1 : 0;
            SampleMoments m = sample_moments(data);
            s.predicted = bias_formula(config.a[0], m.var_c(0), m.var_r(0),
                                       s.wrong ? 1.0 : 0.0)
                              .bias_a;
        });

        ParameterStudyCell cell;
        cell.model = config.label;
        cell.n = config.n;
        cell.replications = replications;
        cell.true_a = config.a[0];
        cell.true_b = config.b;
        cell.true_mu = config.mu;

        std::vector<char> use(replications);
        std::size_t used = 0, wrong = 0, eta_redraws = 0, observations = 0;
        double eta_sum = 0.0;
        for (std::size_t r = 0; r < replications; ++r) {
            use[r] = slots[r].ok;
            used += slots[r].ok ? 1 : 0;
            wrong += slots[r].wrong;
            eta_redraws += slots[r].eta_redraws;
            observations += slots[r].observations;
            eta_sum += slots[r].eta_sum;
        }
        cell.used = used;
        cell.no_solution = replications - used;
        auto fill = [&](MetricSummary& ms, auto err_of) {
            MeanSe me = reduce_mean_se(use, replications, err_of);
            MeanSe mae = reduce_mean_se(use, replications,
                                        [&](std::size_t r) { return std::abs(err_of(r)); });
            ms.me = me.mean;
            ms.me_se = me.se;
            ms.mae = mae.mean;
            ms.mae_se = mae.se;
        };
        fill(cell.a, [&](std::size_t r) { return slots[r].err_a; });
        fill(cell.b, [&](std::size_t r) { return slots[r].err_b; });
        fill(cell.mu, [&](std::size_t r) { return slots[r].err_mu; });
        cell.p_wrong_hat = used ? static_cast<double>(wrong) / static_cast<double>(used) : 0.0;
        MeanSe pred = reduce_mean_se(use, replications,
                                     [&](std::size_t r) { return slots[r].predicted; });
        cell.predicted_me_a = pred.mean;
        MeanSe diff = reduce_mean_se(
            use, replications, [&](std::size_t r) { return slots[r].err_a - slots[r].predicted; });
        cell.me_minus_predicted = diff.mean;
        cell.me_minus_predicted_se = diff.se;
        cell.redraw_rate =
            observations ? static_cast<double>(eta_redraws) / static_cast<double>(observations)
                         : 0.0;
        cell.eta_mean_shift =
            observations ? eta_sum / static_cast<double>(observations) - config.mu : 0.0;
        report.cells.push_back(std::move(cell));
    }
    return report;
}

ComparisonStudyReport run_comparison_study(const std::vector<SimulationConfig>& configs,
                                           std::size_t replications, double split) {
    if (replications < 1) throw ConfigError("replications: must be >= 1");
    if (!(split > 0.0 && split < 1.0)) throw ConfigError("split: must be in (0, 1)");
    ComparisonStudyReport report;
    report.replications = replications;
    report.split = split;
    if (!configs.empty()) report.seed = configs.front().seed;

    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        const SimulationConfig& config = configs[ci];
        config.validate();
        const std::size_t n_train = static_cast<std::size_t>(std::llround(
            static_cast<double>(config.n) * split));
        if (n_train < 2 || config.n - n_train < 2) {
            throw ConfigError("split: needs at least 2 training and 2 validation rows");
        }
        const std::size_t n_val = config.n - n_train;

        struct Slot {
            char ok = 0;
            char no_solution = 0;
            char degenerate = 0;
            double ours_c = 0, ours_r = 0;
            double ccrm_c = 0, ccrm_r = 0;
            std::size_t eta_redraws = 0;
            std::size_t observations = 0;
        };
        std::vector<Slot> slots(replications);

        parallel_replications(replications, [&](std::size_t r) {
            RngStream rng(config.seed, cell_stream_index(ci, r));
            GenerationStats gen;
            IntervalDataset data = generate_sample(config, rng, &gen);
            Slot& s = slots[r];
            s.eta_redraws = gen.eta_redraws;
            s.observations = gen.observations;

            std::vector<std::size_t> order(config.n);
            for (std::size_t i = 0; i < config.n; ++i) order[i] = i;
            for (std::size_t i = config.n; i-- > 1;) {
                std::size_t j = static_cast<std::size_t>(rng.next_u64() % (i + 1));
                std::swap(order[i], order[j]);
            }

            const std::size_t p = config.p();
            std::vector<std::vector<Interval>> train_x(p), val_x(p);
            std::vector<Interval> train_y, val_y;
            for (std::size_t j = 0; j < p; ++j) {
                train_x[j].reserve(n_train);
                val_x[j].reserve(n_val);
            }
            for (std::size_t i = 0; i < config.n; ++i) {
                bool in_train = i < n_train;
                for (std::size_t j = 0; j < p; ++j) {
                    (in_train ? train_x[j] : val_x[j]).push_back(data.predictor(j)[order[i]]);
                }
                (in_train ? train_y : val_y).push_back(data.response()[order[i]]);
            }
            IntervalDataset train = IntervalDataset::make(std::move(train_x), std::move(train_y));

            FitOutcome ours = p == 1 ? fit_univariate(train) : fit_multivariate(train);
            if (!ours.ok()) {
                s.no_solution = 1;
                return;
            }
            CcrmFit ccrm;
            try {
                ccrm = fit_ccrm(train);
            } catch (const Error&) {
                s.degenerate = 1;  // rank-deficient training draw; drop it
                return;
            }

            double mean_c = 0.0, mean_r = 0.0;
            for (const Interval& y : val_y) {
                mean_c += y.center;
                mean_r += y.radius;
            }
            mean_c /= static_cast<double>(n_val);
            mean_r /= static_cast<double>(n_val);
            double denom_c = 0.0, denom_r = 0.0;
            for (const Interval& y : val_y) {
                denom_c += (y.center - mean_c) * (y.center - mean_c);
                denom_r += (y.radius - mean_r) * (y.radius - mean_r);
            }
            if (denom_c <= 0.0 || denom_r <= 0.0) {
                s.degenerate = 1;
                return;
            }

            double ours_c = 0.0, ours_r = 0.0, ccrm_c = 0.0, ccrm_r = 0.0;
            std::vector<Interval> row(p);
            for (std::size_t i = 0; i < n_val; ++i) {
                for (std::size_t j = 0; j < p; ++j) row[j] = val_x[j][i];
                Prediction po = predict(ours.fit(), row, /*clamp=*/false);
                Prediction pc = ccrm_predict(ccrm, row);
                double dc = val_y[i].center - po.center;
                double dr = val_y[i].radius - po.radius_raw;
                ours_c += dc * dc;
                ours_r += dr * dr;
                dc = val_y[i].center - pc.center;
                dr = val_y[i].radius - pc.radius_raw;
                ccrm_c += dc * dc;
                ccrm_r += dr * dr;
            }
            s.ok = 1;
            s.ours_c = ours_c / denom_c;
            s.ours_r = ours_r / denom_r;
            s.ccrm_c = ccrm_c / denom_c;
            s.ccrm_r = ccrm_r / denom_r;
        });

        ComparisonStudyCell cell;
        cell.model = config.label;
        cell.n = config.n;
        cell.replications = replications;
        std::vector<char> use(replications);
        std::size_t eta_redraws = 0, observations = 0;
        for (std::size_t r = 0; r < replications; ++r) {
            use[r] = slots[r].ok;
            cell.used += slots[r].ok ? 1 : 0;
            cell.no_solution += slots[r].no_solution;
            cell.degenerate_validation += slots[r].degenerate;
            eta_redraws += slots[r].eta_redraws;
            observations += slots[r].observations;
        }
        auto fill = [&](AmseSummary& out, auto center_of, auto radius_of) {
            MeanSe c = reduce_mean_se(use, replications, center_of);
            MeanSe rse = reduce_mean_se(use, replications, radius_of);
            MeanSe avg = reduce_mean_se(use, replications, [&](std::size_t r) {
                return 0.5 * (center_of(r) + radius_of(r));
            });
            out.center = c.mean;
            out.center_se = c.se;
            out.radius = rse.mean;
            out.radius_se = rse.se;
            out.average = avg.mean;
            out.average_se = avg.se;
        };
        fill(cell.ours, [&](std::size_t r) { return slots[r].ours_c; },
             [&](std::size_t r) { return slots[r].ours_r; });
        fill(cell.ccrm, [&](std::size_t r) { return slots[r].ccrm_c; },
             [&](std::size_t r) { return slots[r].ccrm_r; });
        cell.redraw_rate =
            observations ? static_cast<double>(eta_redraws) / static_cast<double>(observations)
                         : 0.0;
        report.cells.push_back(std::move(cell));
    }
    return report;
}

double estimate_wrong_branch_probability(const SimulationConfig& config,
                                         std::size_t replications) {
    config.validate();
    if (config.p() != 1) {
        throw ConfigError("config.a: wrong-branch estimation requires a univariate model");
    }
    if (replications < 1) throw ConfigError("replications: must be >= 1");

    std::vector<char> wrong(replications, 0), ok(replications, 0);
    parallel_replications(replications, [&](std::size_t r) {
        RngStream rng(config.seed, cell_stream_index(0, r));
        IntervalDataset data = generate_sample(config, rng);
        FitOutcome outcome = fit_univariate(data);
        if (!outcome.ok()) return;
        ok[r] = 1;
        wrong[r] = branch_is_wrong(config.a[0], outcome.fit().branch) ? 1 : 0;
    });
    std::size_t used = 0, bad = 0;
    for (std::size_t r = 0; r < replications; ++r) {
        used += ok[r];
        bad += wrong[r];
    }
    return used ? static_cast<double>(bad) / static_cast<double>(used) : 0.0;
}

}  // namespace iregress

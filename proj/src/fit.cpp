#include "iregress/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iregress/linalg.hpp"

namespace iregress {

namespace {

constexpr double kTieRelTol = 1e-12;

bool nearly_equal_objectives(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= kTieRelTol * scale;
}

bool same_coefficients(const std::vector<double>& a, const std::vector<double>& b) {
    double scale = 1.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-12 * scale) return false;
    }
    return true;
}

// Fills objective and the divisor n-1 residual variances.
void finalize(const IntervalDataset& data, FitResult& fit) {
    const std::size_t n = data.n_obs();
    const std::size_t p = fit.a.size();
    double sum_c2 = 0.0, sum_r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double c = fit.b;
        double r = fit.mu;
        for (std::size_t j = 0; j < p; ++j) {
            c += fit.a[j] * data.predictor(j)[i].center;
            r += std::abs(fit.a[j]) * data.predictor(j)[i].radius;
        }
        double rc = data.response()[i].center - c;
        double rr = data.response()[i].radius - r;
        sum_c2 += rc * rc;
        sum_r2 += rr * rr;
    }
    fit.objective = (sum_c2 + sum_r2) / static_cast<double>(n);
    fit.sigma2_lambda = sum_c2 / static_cast<double>(n - 1);
    fit.sigma2_eta = sum_r2 / static_cast<double>(n - 1);
}

FitResult make_univariate_result(const IntervalDataset& data, const HalfSpaceTriple& t,
                                 Branch::Kind kind) {
    FitResult fit;
    fit.a = {t.a};
    fit.b = t.b;
    fit.mu = t.mu;
    fit.branch.kind = kind;
    finalize(data, fit);
    return fit;
}

}  // namespace

std::string Branch::to_string() const {
    switch (kind) {
        case Kind::PlusHalfSpace:
            return "plus";
        case Kind::MinusHalfSpace:
            return "minus";
        case Kind::SignPattern: {
            std::string s = "pattern:";
            for (int v : signs) s += (v > 0 ? '+' : '-');
            return s;
        }
    }
    return "?";
}

bool Branch::same_selection(const Branch& other) const {
    return kind == other.kind && signs == other.signs;
}

double objective_value(const IntervalDataset& data, std::span<const double> a, double b,
                       double mu) {
    if (a.size() != data.n_predictors()) {
        throw DimensionMismatch("objective_value: got " + std::to_string(a.size()) +
                                " coefficients for " + std::to_string(data.n_predictors()) +
                                " predictors");
    }
    const std::size_t n = data.n_obs();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double c = b;
        double r = mu;
        for (std::size_t j = 0; j < a.size(); ++j) {
            c += a[j] * data.predictor(j)[i].center;
            r += std::abs(a[j]) * data.predictor(j)[i].radius;
        }
        double dc = c - data.response()[i].center;
        double dr = r - data.response()[i].radius;
        total += dc * dc + dr * dr;
    }
    return total / static_cast<double>(n);
}

HalfSpaceSolutions half_space_solutions(const SampleMoments& m) {
    const std::size_t resp = m.response_index();
    if (resp != 1) throw DimensionMismatch("half_space_solutions requires exactly one predictor");
    const double u = m.var_c(0);
    const double v = m.var_r(0);
    const double denom = u + v;
    if (denom <= 0.0) {
        throw DegenerateVariance("predictor has zero sample variance in centers and radii");
    }
    const double scc = m.cov_c_with_response(0);
    const double srr = m.cov_r_with_response(0);

    HalfSpaceSolutions hs;
    hs.plus.a = (scc + srr) / denom;
    hs.plus.b = m.mean_c[resp] - hs.plus.a * m.mean_c[0];
    hs.plus.mu = m.mean_r[resp] - std::abs(hs.plus.a) * m.mean_r[0];
    hs.minus.a = (scc - srr) / denom;
    hs.minus.b = m.mean_c[resp] - hs.minus.a * m.mean_c[0];
    hs.minus.mu = m.mean_r[resp] - std::abs(hs.minus.a) * m.mean_r[0];
    return hs;
}

HalfSpaceSolutions half_space_solutions(const IntervalDataset& data) {
    if (data.n_predictors() != 1) {
        throw DimensionMismatch("half_space_solutions requires exactly one predictor");
    }
    return half_space_solutions(sample_moments(data));
}

FitOutcome fit_univariate(const IntervalDataset& data) {
    if (data.n_predictors() != 1) {
        throw DimensionMismatch("fit_univariate requires exactly one predictor");
    }
    const SampleMoments m = sample_moments(data);
    const double scc = m.cov_c_with_response(0);
    const double srr = m.cov_r_with_response(0);
    const HalfSpaceSolutions hs = half_space_solutions(m);

    FitOutcome out;
    if (std::abs(scc) > std::abs(srr)) {
        // Exactly one half-space solution is sign-consistent here.
        if (scc > 0.0) {
            out.result = make_univariate_result(data, hs.plus, Branch::Kind::PlusHalfSpace);
        } else {
            out.result = make_univariate_result(data, hs.minus, Branch::Kind::MinusHalfSpace);
        }
        return out;
    }
    if (srr < 0.0 && std::abs(scc) < std::abs(srr)) {
        out.no_solution = NoSolutionInfo{
            "radius covariance S(X^r,Y^r) is negative and dominates S(X^c,Y^c); "
            "neither half-space solution is sign-consistent"};
        return out;
    }

    // Both candidates may exist; keep the sign-consistent ones and compare
    // objectives. Knife-edge |S(X^c,Y^c)| = |S(X^r,Y^r)| lands here too.
    const bool plus_ok = hs.plus.a >= 0.0;
    const bool minus_ok = hs.minus.a <= 0.0;
    const bool duplicated = plus_ok && minus_ok && hs.plus.a == hs.minus.a;
    if (plus_ok && minus_ok && !duplicated) {
        FitResult plus = make_univariate_result(data, hs.plus, Branch::Kind::PlusHalfSpace);
        FitResult minus = make_univariate_result(data, hs.minus, Branch::Kind::MinusHalfSpace);
        if (!nearly_equal_objectives(plus.objective, minus.objective) &&
            minus.objective < plus.objective) {
            out.result = std::move(minus);
        } else {
            out.result = std::move(plus);  // ties go to the plus branch
        }
        return out;
    }
    if (plus_ok) {
        out.result = make_univariate_result(data, hs.plus, Branch::Kind::PlusHalfSpace);
        return out;
    }
    if (minus_ok) {
        out.result = make_univariate_result(data, hs.minus, Branch::Kind::MinusHalfSpace);
        return out;
    }
    out.no_solution = NoSolutionInfo{"neither half-space solution is sign-consistent"};
    return out;
}

FitOutcome fit_multivariate(const IntervalDataset& data) {
    const std::size_t p = data.n_predictors();
    if (p == 0) throw DimensionMismatch("fit_multivariate requires at least one predictor");
    if (p > kMaxSignPatternPredictors) {
        throw PatternBudgetExceeded("sign-pattern enumeration capped at " +
                                    std::to_string(kMaxSignPatternPredictors) +
                                    " predictors, got " + std::to_string(p));
    }
    const SampleMoments m = sample_moments(data);
    const std::size_t resp = m.response_index();

    struct Candidate {
        std::vector<double> a;
        double b, mu, objective;
        std::vector<int> signs;
    };
    std::vector<Candidate> admissible;
    std::size_t solvable_patterns = 0;

    const std::size_t n_patterns = std::size_t{1} << p;
    for (std::size_t mask = 0; mask < n_patterns; ++mask) {
        std::vector<int> signs(p);
        for (std::size_t j = 0; j < p; ++j) {
            signs[j] = ((mask >> (p - 1 - j)) & 1u) ? -1 : +1;
        }

        Matrix sys(p, p);
        std::vector<double> rhs(p);
        for (std::size_t k = 0; k < p; ++k) {
            for (std::size_t j = 0; j < p; ++j) {
                sys(k, j) = m.cov_c(j, k) + signs[k] * signs[j] * m.cov_r(j, k);
            }
            rhs[k] = m.cov_c(k, resp) + signs[k] * m.cov_r(k, resp);
        }
        auto solution = solve_linear(std::move(sys), std::move(rhs));
        if (!solution) continue;  // singular under this pattern, skip
        ++solvable_patterns;

        bool sign_consistent = true;
        for (std::size_t k = 0; k < p; ++k) {
            if (signs[k] > 0 ? (*solution)[k] < 0.0 : (*solution)[k] > 0.0) {
                sign_consistent = false;
                break;
            }
        }
        if (!sign_consistent) continue;

        // Patterns differing only at zero coefficients reproduce the same
        // solution; sgn is undefined at 0, so keep the first.
        bool duplicate = false;
        for (const auto& c : admissible) {
            if (same_coefficients(c.a, *solution)) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;

        Candidate c;
        c.a = std::move(*solution);
        c.b = m.mean_c[resp];
        c.mu = m.mean_r[resp];
        for (std::size_t j = 0; j < p; ++j) {
            c.b -= c.a[j] * m.mean_c[j];
            c.mu -= std::abs(c.a[j]) * m.mean_r[j];
        }
        c.objective = objective_value(data, c.a, c.b, c.mu);
        c.signs = std::move(signs);
        admissible.push_back(std::move(c));
    }

    FitOutcome out;
    if (admissible.empty()) {
        if (solvable_patterns == 0) {
            throw SingularSystem("normal equations singular under every sign pattern");
        }
        out.no_solution = NoSolutionInfo{"no sign pattern yields a sign-consistent solution"};
        return out;
    }

    std::size_t best = 0;
    bool ambiguous = false;
    for (std::size_t i = 1; i < admissible.size(); ++i) {
        if (nearly_equal_objectives(admissible[i].objective, admissible[best].objective)) {
            ambiguous = true;  // tie beyond resolution; earlier pattern wins
        } else if (admissible[i].objective < admissible[best].objective) {
            best = i;
        }
    }

    FitResult fit;
    fit.a = std::move(admissible[best].a);
    fit.b = admissible[best].b;
    fit.mu = admissible[best].mu;
    if (p == 1) {
        fit.branch.kind = admissible[best].signs[0] > 0 ? Branch::Kind::PlusHalfSpace
                                                        : Branch::Kind::MinusHalfSpace;
    } else {
        fit.branch.kind = Branch::Kind::SignPattern;
        fit.branch.signs = admissible[best].signs;
    }
    fit.admissible_patterns = admissible.size();
    fit.ambiguous_minimum = ambiguous;
    finalize(data, fit);
    out.result = std::move(fit);
    return out;
}

Prediction predict(const FitResult& fit, std::span<const Interval> x, bool clamp) {
    if (x.size() != fit.a.size()) {
        throw DimensionMismatch("predict: got " + std::to_string(x.size()) +
                                " predictors, fit has " + std::to_string(fit.a.size()));
    }
    Prediction p;
    p.center = fit.b;
    p.radius_raw = fit.mu;
    for (std::size_t j = 0; j < x.size(); ++j) {
        p.center += fit.a[j] * x[j].center;
        p.radius_raw += std::abs(fit.a[j]) * x[j].radius;
    }
    p.negative_radius = p.radius_raw < 0.0;
    if (p.negative_radius && clamp) {
        p.radius = 0.0;
        p.clamped = true;
    } else {
        p.radius = p.radius_raw;
    }
    return p;
}

std::vector<Prediction> fitted_values(const IntervalDataset& data, const FitResult& fit) {
    std::vector<Prediction> out;
    out.reserve(data.n_obs());
    for (std::size_t i = 0; i < data.n_obs(); ++i) {
        auto row = data.x_row(i);
        out.push_back(predict(fit, row, /*clamp=*/false));
    }
    return out;
}

BiasEstimate bias_formula(double a, double s2_xc, double s2_xr, double p_wrong) {
    if (!(s2_xc >= 0.0) || !(s2_xr >= 0.0) || !(s2_xc + s2_xr > 0.0)) {
        throw DomainError("bias_formula needs nonnegative variances with a positive sum");
    }
    if (!(p_wrong >= 0.0 && p_wrong <= 1.0)) {
        throw DomainError("bias_formula needs p_wrong in [0, 1]");
    }
    const double denom = s2_xc + s2_xr;
    BiasEstimate e;
    e.bias_a = -2.0 * a * s2_xr / denom * p_wrong;
    e.bias_abs_a = -2.0 * std::abs(a) * s2_xc / denom * p_wrong;
    return e;
}

}  // namespace iregress

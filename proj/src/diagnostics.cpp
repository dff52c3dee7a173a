#include "iregress/diagnostics.hpp"

#include <limits>

namespace iregress {

namespace {

SumsOfSquares sums_core(const IntervalDataset& data, std::span<const double> fit_c,
                        std::span<const double> fit_r) {
    const std::size_t n = data.n_obs();
    if (fit_c.size() != n) {
        throw LengthMismatch("sums_of_squares: fitted length " + std::to_string(fit_c.size()) +
                             " does not match n = " + std::to_string(n));
    }
    double mean_c = 0.0, mean_r = 0.0;
    for (const Interval& y : data.response()) {
        mean_c += y.center;
        mean_r += y.radius;
    }
    mean_c /= static_cast<double>(n);
    mean_r /= static_cast<double>(n);

    SumsOfSquares ss;
    for (std::size_t i = 0; i < n; ++i) {
        const Interval& y = data.response()[i];
        double tc = y.center - mean_c, tr = y.radius - mean_r;
        double ec = fit_c[i] - mean_c, er = fit_r[i] - mean_r;
        double rc = y.center - fit_c[i], rr = y.radius - fit_r[i];
        ss.sst += tc * tc + tr * tr;
        ss.sse += ec * ec + er * er;
        ss.ssr += rc * rc + rr * rr;
    }
    return ss;
}

}  // namespace

SumsOfSquares sums_of_squares(const IntervalDataset& data, std::span<const Interval> fitted) {
    std::vector<double> c(fitted.size()), r(fitted.size());
    for (std::size_t i = 0; i < fitted.size(); ++i) {
        c[i] = fitted[i].center;
        r[i] = fitted[i].radius;
    }
    return sums_core(data, c, r);
}

SumsOfSquares sums_of_squares(const IntervalDataset& data, std::span<const Prediction> fitted) {
    std::vector<double> c(fitted.size()), r(fitted.size());
    for (std::size_t i = 0; i < fitted.size(); ++i) {
        c[i] = fitted[i].center;
        r[i] = fitted[i].radius_raw;
    }
    return sums_core(data, c, r);
}

double r_squared(const SumsOfSquares& ss) {
    if (ss.sst <= 0.0) {
        throw ZeroTotalVariation("r_squared undefined: response has no variability");
    }
    return 1.0 - ss.ssr / ss.sst;
}

Residuals residuals(const IntervalDataset& data, const FitResult& fit) {
    const auto fv = fitted_values(data, fit);
    Residuals r;
    r.center.reserve(fv.size());
    r.radius.reserve(fv.size());
    for (std::size_t i = 0; i < fv.size(); ++i) {
        r.center.push_back(data.response()[i].center - fv[i].center);
        r.radius.push_back(data.response()[i].radius - fv[i].radius_raw);
        r.mean_center += r.center.back();
        r.mean_radius += r.radius.back();
    }
    r.mean_center /= static_cast<double>(fv.size());
    r.mean_radius /= static_cast<double>(fv.size());
    return r;
}

NegativeRadiusBound negative_radius_bound(const FitResult& fit, const IntervalDataset& data) {
    NegativeRadiusBound out;
    out.per_obs.reserve(data.n_obs());
    double sum = 0.0;
    std::size_t bounded = 0;
    for (const Interval& y : data.response()) {
        if (y.radius > 0.0) {
            double b = fit.sigma2_eta / (y.radius * y.radius);
            out.per_obs.push_back(b);
            sum += b;
            ++bounded;
        } else {
            out.per_obs.push_back(std::numeric_limits<double>::infinity());
            ++out.unbounded_count;
        }
    }
    out.mean_bound = bounded ? sum / static_cast<double>(bounded) : 0.0;
    return out;
}

Diagnostics compute_diagnostics(const IntervalDataset& data, const FitResult& fit) {
    Diagnostics d;
    const auto fv = fitted_values(data, fit);
    for (const auto& p : fv) {
        if (p.radius_raw < 0.0) ++d.neg_radius_count;
    }
    SumsOfSquares ss = sums_of_squares(data, std::span<const Prediction>(fv));
    d.sst = ss.sst;
    d.sse = ss.sse;
    d.ssr = ss.ssr;
    d.r2 = r_squared(ss);
    d.sigma2_lambda = fit.sigma2_lambda;
    d.sigma2_eta = fit.sigma2_eta;
    d.neg_radius_bound_mean = negative_radius_bound(fit, data).mean_bound;
    d.res = residuals(data, fit);
    return d;
}

}  // namespace iregress

#include "iregress/moments.hpp"

namespace iregress {

namespace {

// Gathers the j-th variable (predictor or response) as centers and radii.
void copy_column(const IntervalDataset& data, std::size_t j, std::vector<double>& c,
                 std::vector<double>& r) {
    const std::size_t p = data.n_predictors();
    const auto& col = (j < p) ? data.predictor(j) : data.response();
    c.resize(col.size());
    r.resize(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
        c[i] = col[i].center;
        r[i] = col[i].radius;
    }
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Centered two-pass covariance with divisor n.
double cov_n(const std::vector<double>& x, double mx, const std::vector<double>& y, double my) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
    return s / static_cast<double>(x.size());
}

}  // namespace

SampleMoments sample_moments(const IntervalDataset& data) {
    const std::size_t n = data.n_obs();
    if (n < 2) throw TooFewRows("sample moments need n >= 2");
    const std::size_t m = data.n_predictors() + 1;

    std::vector<std::vector<double>> centers(m), radii(m);
    SampleMoments out;
    out.mean_c.resize(m);
    out.mean_r.resize(m);
    out.cov_c = Matrix(m, m);
    out.cov_r = Matrix(m, m);

    for (std::size_t j = 0; j < m; ++j) {
        copy_column(data, j, centers[j], radii[j]);
        out.mean_c[j] = mean_of(centers[j]);
        out.mean_r[j] = mean_of(radii[j]);
    }
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j; k < m; ++k) {
            double cc = cov_n(centers[j], out.mean_c[j], centers[k], out.mean_c[k]);
            double rr = cov_n(radii[j], out.mean_r[j], radii[k], out.mean_r[k]);
            out.cov_c(j, k) = out.cov_c(k, j) = cc;
            out.cov_r(j, k) = out.cov_r(k, j) = rr;
        }
    }
    return out;
}

double pairwise_cov(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw LengthMismatch("pairwise_cov needs equal lengths, got " +
                             std::to_string(xs.size()) + " and " + std::to_string(ys.size()));
    }
    const std::size_t n = xs.size();
    if (n < 2) throw TooFewRows("pairwise_cov needs n >= 2");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            s += (xs[i] - xs[j]) * (ys[i] - ys[j]);
        }
    }
    return s / (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace iregress

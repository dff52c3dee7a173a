#pragma once

#include <cmath>
#include <vector>

#include "iregress/dataset.hpp"
#include "iregress/rng.hpp"

namespace iregress::testsupport {

struct ModelSpec {
    std::vector<double> a = {2.0};
    double b = 5.0;
    double mu = 0.0;
    double sigma_lambda = 0.0;
    double sigma_eta = 0.0;
    double xc_lo = 0.0, xc_hi = 10.0;
    double xr_lo = 0.5, xr_hi = 2.5;
};

// Draws a dataset from the center/radius model, redrawing eta when the
// response radius would go negative.
inline IntervalDataset make_model_data(const ModelSpec& spec, std::size_t n, RngStream& rng) {
    const std::size_t p = spec.a.size();
    std::vector<std::vector<Interval>> xs(p);
    std::vector<Interval> ys;
    for (std::size_t i = 0; i < n; ++i) {
        double center = spec.b;
        double radius = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            Interval x(rng.uniform(spec.xc_lo, spec.xc_hi), rng.uniform(spec.xr_lo, spec.xr_hi));
            xs[j].push_back(x);
            center += spec.a[j] * x.center;
            radius += std::abs(spec.a[j]) * x.radius;
        }
        center += spec.sigma_lambda > 0 ? rng.normal(0.0, spec.sigma_lambda) : 0.0;
        double eta = spec.mu + (spec.sigma_eta > 0 ? rng.normal(0.0, spec.sigma_eta) : 0.0);
        while (radius + eta < 0.0) {
            eta = spec.mu + (spec.sigma_eta > 0 ? rng.normal(0.0, spec.sigma_eta) : 0.0);
        }
        ys.push_back(Interval(center, radius + eta));
    }
    return IntervalDataset::make(std::move(xs), std::move(ys));
}

}  // namespace iregress::testsupport

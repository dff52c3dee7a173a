#pragma once

#include <cassert>
#include <cmath>
#include <optional>

#include "iregress/errors.hpp"

namespace iregress {

// Closed bounded interval stored as (center, radius); bounds are derived
// views. Every estimator below is written in this parametrization, so it is
// the canonical one. Invariant: radius >= 0.
struct Interval {
    double center = 0.0;
    double radius = 0.0;

    Interval() = default;
    Interval(double center, double radius) : center(center), radius(radius) {
        assert(radius >= 0.0);
    }

    double lower() const { return center - radius; }
    double upper() const { return center + radius; }

    bool operator==(const Interval&) const = default;
};

// Absolute slack tolerated when validating lower <= upper on file input;
// anything inverted by no more than this collapses to a point interval.
inline constexpr double kBoundsSlack = 1e-9;

inline Interval make_from_bounds(double lower, double upper) {
    if (lower > upper + kBoundsSlack) throw BoundsInverted(lower, upper);
    double radius = 0.5 * (upper - lower);
    return Interval(0.5 * (lower + upper), radius < 0.0 ? 0.0 : radius);
}

inline Interval minkowski_add(const Interval& a, const Interval& b) {
    return Interval(a.center + b.center, a.radius + b.radius);
}

inline Interval scalar_mul(double k, const Interval& a) {
    return Interval(k * a.center, std::abs(k) * a.radius);
}

inline Interval operator+(const Interval& a, const Interval& b) { return minkowski_add(a, b); }
inline Interval operator*(double k, const Interval& a) { return scalar_mul(k, a); }

inline double delta_distance(const Interval& a, const Interval& b) {
    return std::hypot(a.center - b.center, a.radius - b.radius);
}

inline double delta_norm(const Interval& a) {
    return std::hypot(a.center, a.radius);
}

// B + C = A solves for C; exists only when A is at least as wide as B.
inline std::optional<Interval> hukuhara_diff(const Interval& a, const Interval& b) {
    if (a.radius < b.radius) return std::nullopt;
    return Interval(a.center - b.center, a.radius - b.radius);
}

}  // namespace iregress

#include <doctest.h>

#include <cmath>

#include "iregress/interval.hpp"
#include "iregress/rng.hpp"

using namespace iregress;

namespace {

// Independent oracle: the bounds form of the delta distance,
// sqrt(0.5 * ((dL)^2 + (dU)^2)).
double delta_from_bounds(const Interval& a, const Interval& b) {
    double dl = a.lower() - b.lower();
    double du = a.upper() - b.upper();
    return std::sqrt(0.5 * (dl * dl + du * du));
}

double norm_from_bounds(const Interval& a) {
    return std::sqrt(0.5 * (a.lower() * a.lower() + a.upper() * a.upper()));
}

Interval random_interval(RngStream& rng, double c_span = 10.0, double r_span = 5.0) {
    return Interval(rng.uniform(-c_span, c_span), rng.uniform(0.0, r_span));
}

}  // namespace

TEST_CASE("make_from_bounds basics") {
    Interval a = make_from_bounds(0.0, 2.0);
    CHECK(a.center == 1.0);
    CHECK(a.radius == 1.0);

    Interval point = make_from_bounds(3.0, 3.0);
    CHECK(point.center == 3.0);
    CHECK(point.radius == 0.0);

    Interval wide = make_from_bounds(-1.0, 5.0);
    CHECK(wide.center == 2.0);
    CHECK(wide.radius == 3.0);

    CHECK_THROWS_AS(make_from_bounds(1.0, 0.0), BoundsInverted);

    // Inversion inside the slack collapses to a point interval.
    Interval clamped = make_from_bounds(1.0, 1.0 - 1e-12);
    CHECK(clamped.radius == 0.0);
}

TEST_CASE("minkowski addition and scalar multiplication") {
    Interval a = make_from_bounds(0.0, 2.0);
    Interval b = make_from_bounds(1.0, 3.0);
    Interval sum = minkowski_add(a, b);
    CHECK(sum.lower() == 1.0);
    CHECK(sum.upper() == 5.0);

    CHECK(minkowski_add(a, Interval(0.0, 0.0)) == a);

    Interval sym = make_from_bounds(-1.0, 1.0) + make_from_bounds(-2.0, 2.0);
    CHECK(sym.lower() == -3.0);
    CHECK(sym.upper() == 3.0);

    Interval c = make_from_bounds(1.0, 3.0);
    Interval twice = scalar_mul(2.0, c);
    CHECK(twice.lower() == 2.0);
    CHECK(twice.upper() == 6.0);
    Interval reflected = scalar_mul(-1.0, c);
    CHECK(reflected.lower() == -3.0);
    CHECK(reflected.upper() == -1.0);
    Interval zero = scalar_mul(0.0, c);
    CHECK(zero.center == 0.0);
    CHECK(zero.radius == 0.0);
}

TEST_CASE("delta distance and norm against the bounds-form oracle") {
    Interval a = make_from_bounds(0.0, 2.0);
    CHECK(delta_distance(a, a) == 0.0);

    Interval b = make_from_bounds(1.0, 3.0);
    CHECK(delta_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(delta_distance(a, b) == doctest::Approx(delta_from_bounds(a, b)).epsilon(1e-14));

    CHECK(delta_distance(make_from_bounds(0.0, 0.0), make_from_bounds(3.0, 3.0)) ==
          doctest::Approx(3.0).epsilon(1e-14));

    CHECK(delta_norm(Interval(0.0, 0.0)) == 0.0);
    CHECK(delta_norm(make_from_bounds(3.0, 3.0)) == 3.0);
    Interval sym = make_from_bounds(-1.0, 1.0);
    CHECK(delta_norm(sym) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(delta_norm(sym) == doctest::Approx(norm_from_bounds(sym)).epsilon(1e-14));
}

TEST_CASE("hukuhara difference") {
    Interval a = make_from_bounds(1.0, 5.0);
    Interval b = make_from_bounds(0.0, 2.0);
    auto c = hukuhara_diff(a, b);
    REQUIRE(c.has_value());
    CHECK(c->lower() == 1.0);
    CHECK(c->upper() == 3.0);
    CHECK(minkowski_add(b, *c) == a);

    auto self = hukuhara_diff(a, a);
    REQUIRE(self.has_value());
    CHECK(self->center == 0.0);
    CHECK(self->radius == 0.0);

    CHECK(!hukuhara_diff(make_from_bounds(0.0, 2.0), make_from_bounds(-2.0, 2.0)).has_value());
}

TEST_CASE("center-radius delta equals bounds-form delta on random pairs") {
    RngStream rng(2024, 0);
    for (int i = 0; i < 500; ++i) {
        Interval a = random_interval(rng);
        Interval b = random_interval(rng);
        double d1 = delta_distance(a, b);
        double d2 = delta_from_bounds(a, b);
        CHECK(std::abs(d1 - d2) <= 1e-12 * std::max(1.0, std::max(d1, d2)));
    }
}

TEST_CASE("metric axioms on random triples") {
    RngStream rng(2025, 0);
    for (int i = 0; i < 500; ++i) {
        Interval a = random_interval(rng);
        Interval b = random_interval(rng);
        Interval c = random_interval(rng);
        double ab = delta_distance(a, b);
        double ba = delta_distance(b, a);
        CHECK(ab >= 0.0);
        CHECK(ab == ba);
        CHECK(delta_distance(a, a) == 0.0);
        double ac = delta_distance(a, c);
        double cb = delta_distance(c, b);
        CHECK(ab <= ac + cb + 1e-12 * std::max(1.0, ab));
    }
}

TEST_CASE("scalar multiplication is a delta similarity") {
    RngStream rng(2026, 0);
    for (int i = 0; i < 500; ++i) {
        Interval a = random_interval(rng);
        Interval b = random_interval(rng);
        double k = rng.uniform(-4.0, 4.0);
        double lhs = delta_distance(scalar_mul(k, a), scalar_mul(k, b));
        double rhs = std::abs(k) * delta_distance(a, b);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    }
}

TEST_CASE("hukuhara round trip is exact when it exists") {
    RngStream rng(2027, 0);
    for (int i = 0; i < 500; ++i) {
        Interval a = random_interval(rng);
        Interval b = random_interval(rng);
        if (a.radius < b.radius) std::swap(a, b);
        auto c = hukuhara_diff(a, b);
        REQUIRE(c.has_value());
        Interval back = minkowski_add(b, *c);
        // b + (a - b) reconstructs a to rounding precision.
        CHECK(back.center == doctest::Approx(a.center).epsilon(4e-16));
        CHECK(back.radius == doctest::Approx(a.radius).epsilon(4e-16));
    }
}

TEST_CASE("bounds round trip stays within one rounding step") {
    RngStream rng(2028, 0);
    for (int i = 0; i < 500; ++i) {
        double lo = rng.uniform(-50.0, 50.0);
        double hi = lo + rng.uniform(0.0, 20.0);
        Interval v = make_from_bounds(lo, hi);
        CHECK(v.lower() == doctest::Approx(lo).epsilon(1e-15));
        CHECK(v.upper() == doctest::Approx(hi).epsilon(1e-15));
    }
}

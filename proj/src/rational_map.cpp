#include "peq/rational_map.hpp"

#include <cmath>

#include "peq/error.hpp"
#include "peq/tolerances.hpp"

namespace peq {

namespace {

Coefficients coefficients_for(const SpherePoint& u, const SpherePoint& v) {
    const Complex one(1.0, 0.0);
    if (u.is_infinity()) {
        // Divide the generic coefficients by u and let u -> infinity.
        const Complex vv = v.value();
        return {vv, -(vv - one), one, Complex(0.0, 0.0)};
    }
    if (v.is_infinity()) {
        const Complex uu = u.value();
        return {uu - one, -uu, Complex(0.0, 0.0), -one};
    }
    const Complex uu = u.value(), vv = v.value();
    return {(uu - one) * vv, -uu * (vv - one), uu - one, -(vv - one)};
}

// Ratio num/den placed on the sphere, choosing the well-conditioned chart.
SpherePoint ratio(Complex num, Complex den, double small) {
    if (den == Complex(0.0, 0.0)) return SpherePoint::infinity();
    if (std::abs(den) < small * std::abs(num)) return SpherePoint::from_reciprocal(den / num);
    return SpherePoint(num / den);
}

}  // namespace

NormalizedQuadratic::NormalizedQuadratic(const SpherePoint& u, const SpherePoint& v)
    : u_(u), v_(v), k_(coefficients_for(u, v)) {}

NormalizedQuadratic NormalizedQuadratic::from_critical_values(const SpherePoint& u, const SpherePoint& v) {
    const double eps = kTolerances.critical_collision;
    if (chordal_distance(u, v) < eps) throw InvalidArgument("degenerate critical values: u = v = " + to_string(u));
    const SpherePoint one(1.0);
    if (chordal_distance(u, one) < eps || chordal_distance(v, one) < eps) {
        throw InvalidArgument("normalization collision: a critical value equals 1");
    }
    NormalizedQuadratic f(u, v);
    const double check = 1e-12;
    if (chordal_distance(f.eval(SpherePoint(0.0)), u) > check ||
        chordal_distance(f.eval(SpherePoint::infinity()), v) > check ||
        chordal_distance(f.eval(one), one) > check) {
        throw NumericError("normalized quadratic fails its normalization for u = " + to_string(u) +
                           ", v = " + to_string(v));
    }
    return f;
}

SpherePoint NormalizedQuadratic::eval(const SpherePoint& z) const {
    const double small = kTolerances.pole_denominator_ratio;
    if (z.is_infinity()) return ratio(k_.a, k_.c, small);
    const Complex zz = z.value();
    if (std::abs(zz) > kTolerances.pole_magnitude) {
        const Complex w = 1.0 / zz;
        const Complex w2 = w * w;
        return ratio(k_.a + k_.b * w2, k_.c + k_.d * w2, small);
    }
    const Complex z2 = zz * zz;
    return ratio(k_.a * z2 + k_.b, k_.c * z2 + k_.d, small);
}

std::pair<SpherePoint, SpherePoint> NormalizedQuadratic::preimages(const SpherePoint& w) const {
    if (w == u_) return {SpherePoint(0.0), SpherePoint(0.0)};
    if (w == v_) return {SpherePoint::infinity(), SpherePoint::infinity()};

    // z^2 = m(w) = (v-1)(u-w) / ((u-1)(v-w)), kept as num/den to survive infinities.
    const Complex one(1.0, 0.0);
    Complex num, den;
    if (u_.is_infinity()) {
        num = v_.value() - one;
        den = v_.value() - w.value();
    } else if (v_.is_infinity()) {
        num = u_.value() - w.value();
        den = u_.value() - one;
    } else if (w.is_infinity()) {
        num = v_.value() - one;
        den = u_.value() - one;
    } else if (std::abs(w.value()) > kTolerances.pole_magnitude) {
        const Complex r = 1.0 / w.value();
        num = (v_.value() - one) * (u_.value() * r - one);
        den = (u_.value() - one) * (v_.value() * r - one);
    } else {
        num = (v_.value() - one) * (u_.value() - w.value());
        den = (u_.value() - one) * (v_.value() - w.value());
    }

    if (std::abs(num) <= std::abs(den)) {
        const Complex r = std::sqrt(num / den);
        return {SpherePoint(r), SpherePoint(-r)};
    }
    const Complex q = std::sqrt(den / num);
    return {SpherePoint::from_reciprocal(q), SpherePoint::from_reciprocal(-q)};
}

}  // namespace peq

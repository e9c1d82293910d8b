#include "peq/sphere.hpp"

#include <cmath>
#include <cstdio>

#include "peq/error.hpp"

namespace peq {

SpherePoint::SpherePoint(Complex z) {
    if (std::isnan(z.real()) || std::isnan(z.imag())) throw NumericError("NaN on the Riemann sphere");
    if (std::isinf(z.real()) || std::isinf(z.imag())) {
        infinite_ = true;
    } else {
        z_ = z;
    }
}

SpherePoint SpherePoint::infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
}

SpherePoint SpherePoint::from_reciprocal(Complex w) {
    if (w == Complex(0.0, 0.0)) return infinity();
    return SpherePoint(1.0 / w);
}

Complex SpherePoint::value() const {
    if (infinite_) throw NumericError("finite value requested at infinity");
    return z_;
}

Complex SpherePoint::reciprocal_value() const {
    if (infinite_) return {0.0, 0.0};
    if (z_ == Complex(0.0, 0.0)) throw NumericError("reciprocal requested at 0");
    return 1.0 / z_;
}

double SpherePoint::magnitude() const { return infinite_ ? HUGE_VAL : std::abs(z_); }

SpherePoint SpherePoint::reciprocal() const {
    if (infinite_) return SpherePoint(Complex(0.0, 0.0));
    return from_reciprocal(z_);
}

SpherePoint SpherePoint::negated() const { return infinite_ ? *this : SpherePoint(-z_); }

std::string to_string(const SpherePoint& p, int precision) {
    if (p.is_infinity()) return "inf";
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*g %.*g", precision, p.value().real(), precision, p.value().imag());
    return buf;
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
    if (a.is_infinity() && b.is_infinity()) return 0.0;
    if (a.is_infinity() || b.is_infinity()) {
        const Complex z = a.is_infinity() ? b.value() : a.value();
        return 2.0 / std::sqrt(1.0 + std::norm(z));
    }
    Complex za = a.value();
    Complex zb = b.value();
    // z -> 1/z is an isometry; work in the chart where both are small.
    if (std::abs(za) > 1.0 && std::abs(zb) > 1.0) {
        za = 1.0 / za;
        zb = 1.0 / zb;
    }
    return 2.0 * std::abs(za - zb) / std::sqrt((1.0 + std::norm(za)) * (1.0 + std::norm(zb)));
}

Vec3 stereographic(const SpherePoint& p) {
    if (p.is_infinity()) return {0.0, 0.0, -1.0};
    const Complex z = p.value();
    const double r2 = std::norm(z);
    if (r2 <= 1.0) {
        const double s = 1.0 + r2;
        return {2.0 * z.real() / s, 2.0 * z.imag() / s, (1.0 - r2) / s};
    }
    const Complex w = 1.0 / z;
    const double q2 = std::norm(w);
    const double s = 1.0 + q2;
    return {2.0 * w.real() / s, -2.0 * w.imag() / s, (q2 - 1.0) / s};
}

SpherePoint from_sphere(const Vec3& v) {
    const double n = norm(v);
    if (!(n > 0.0)) throw NumericError("zero vector has no point on the sphere");
    const double x = v[0] / n, y = v[1] / n, z = v[2] / n;
    if (z >= 0.0) return SpherePoint(Complex(x, y) / (1.0 + z));
    return SpherePoint::from_reciprocal(Complex(x, -y) / (1.0 - z));
}

SpherePoint great_circle_midpoint(const SpherePoint& a, const SpherePoint& b) {
    const Vec3 s = stereographic(a) + stereographic(b);
    if (norm(s) < 1e-12) throw NumericError("great-circle midpoint of antipodal points");
    return from_sphere(s);
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

}  // namespace peq

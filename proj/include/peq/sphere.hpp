#pragma once

// Points of the Riemann sphere and the geometry used by the pullback:
// the chordal metric and the stereographic embedding into the unit sphere.

#include <array>
#include <complex>
#include <string>

namespace peq {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

class SpherePoint {
public:
    SpherePoint() = default;
    SpherePoint(Complex z);  // NOLINT: implicit on purpose, finite points are the common case
    SpherePoint(double x) : SpherePoint(Complex(x, 0.0)) {}

    static SpherePoint infinity();
    /// The point 1/w, with 1/0 = infinity.
    static SpherePoint from_reciprocal(Complex w);

    bool is_infinity() const { return infinite_; }
    /// Finite value; throws NumericError at infinity.
    Complex value() const;
    /// 1/z as a finite number (0 at infinity); throws at 0.
    Complex reciprocal_value() const;
    /// Magnitude, or +inf at infinity.
    double magnitude() const;

    SpherePoint reciprocal() const;
    SpherePoint negated() const;

    friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.z_ == b.z_);
    }

private:
    bool infinite_ = false;
    Complex z_{0.0, 0.0};
};

std::string to_string(const SpherePoint& p, int precision = 17);

/// 2|a-b| / sqrt((1+|a|^2)(1+|b|^2)), extended to infinity. Range [0, 2].
double chordal_distance(const SpherePoint& a, const SpherePoint& b);

/// (2x, 2y, 1-|z|^2) / (1+|z|^2): 0 is the north pole, infinity the south pole,
/// 1 maps to (1, 0, 0). The chordal distance is the Euclidean distance of images.
Vec3 stereographic(const SpherePoint& p);

/// Inverse of stereographic; the input is normalized first.
SpherePoint from_sphere(const Vec3& v);

/// Midpoint of the shorter great-circle arc; throws NumericError for antipodes.
SpherePoint great_circle_midpoint(const SpherePoint& a, const SpherePoint& b);

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& a);
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

}  // namespace peq

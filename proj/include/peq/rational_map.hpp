#pragma once

// The normalized quadratic rational map with critical points 0 and infinity,
// critical values u = F(0) and v = F(infinity), and F(1) = 1:
//
//     F(z) = ((u-1) v z^2 - u (v-1)) / ((u-1) z^2 - (v-1)).

#include <utility>

#include "peq/sphere.hpp"

namespace peq {

/// F(z) = (a z^2 + b) / (c z^2 + d).
struct Coefficients {
    Complex a, b, c, d;
};

class NormalizedQuadratic {
public:
    /// Throws InvalidArgument for u = v ("degenerate critical values") or when
    /// u or v is 1 ("normalization collision"). When u or v is infinite the
    /// limit of the generic formula is used. Verifies F(0), F(inf), F(1).
    static NormalizedQuadratic from_critical_values(const SpherePoint& u, const SpherePoint& v);

    const SpherePoint& u() const { return u_; }
    const SpherePoint& v() const { return v_; }
    const Coefficients& coefficients() const { return k_; }

    SpherePoint eval(const SpherePoint& z) const;

    /// The two solutions of F(z) = w, principal square root first; the
    /// second is the negative of the first. They coincide iff w is u or v.
    std::pair<SpherePoint, SpherePoint> preimages(const SpherePoint& w) const;

private:
    NormalizedQuadratic(const SpherePoint& u, const SpherePoint& v);

    SpherePoint u_;
    SpherePoint v_;
    Coefficients k_;
};

}  // namespace peq

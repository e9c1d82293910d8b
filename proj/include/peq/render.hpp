#pragma once

// SVG pictures of a curve on the sphere, in orthographic projection.

#include <string>
#include <vector>

#include "peq/curve.hpp"

namespace peq {

/// Orthonormal camera frame in the stereographic coordinates: points are
/// projected onto (right, up) and `toward` points at the viewer.
struct View {
    std::string name;
    Vec3 right;
    Vec3 up;
    Vec3 toward;
};

/// poles-front, equator-front and oblique. In all of them 1 is to the right
/// and -1 to the left.
std::vector<View> default_views();

/// A standalone SVG 1.1 document. Segments on the far hemisphere are drawn
/// translucent; marks get dots and labels.
std::string render_sphere(const DiscreteCurve& c, const View& view, const std::string& title = "");

}  // namespace peq

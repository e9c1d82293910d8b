#pragma once

// Exact curve parameters. Every pullback halves the parameters of the curve,
// so their denominators outgrow 64 bits after a few dozen iterations.

#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "peq/angle.hpp"

namespace peq {

using Param = boost::multiprecision::cpp_rational;

Param to_param(const Angle& a);

/// Reduces into [0, 1).
Param wrap_unit(const Param& t);

/// 2t mod 1.
Param double_param(const Param& t);

/// (t/2, t/2 + 1/2) for t in [0, 1).
std::pair<Param, Param> halve_param(const Param& t);

/// Midpoint of the counterclockwise arc from a to b (b == a means the full circle).
Param arc_midpoint(const Param& a, const Param& b);

double param_to_double(const Param& t);

/// "0" or "p/q".
std::string param_str(const Param& t);

/// Inverse of param_str; throws InvalidArgument on malformed text.
Param parse_param(std::string_view text);

}  // namespace peq

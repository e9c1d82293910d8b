#pragma once

// Text serialization of discrete curves. Layout:
//
//   # curve-dump v1
//   run <run-id>
//   level <n>
//   map <u> <v>                       (each "re im" or "inf"; the line may be absent)
//   critical-values <alpha> <1-beta>
//   postcritical <count> <param>...
//   schedule <count>
//   mark <param> <kind> <id> <color> <class or ->
//   samples <count>
//   sample <param> <re> <im>          (or "sample <param> inf")
//   end
//
// Parameters are exact fractions, positions use 17 significant digits, so a
// dump reloads to the identical curve.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "peq/curve.hpp"

namespace peq {

struct CurveDump {
    std::string run_id;
    DiscreteCurve curve;
    std::optional<std::pair<SpherePoint, SpherePoint>> map;  ///< (u, v) of the map lifting this curve
};

std::string dump_curve(const CurveDump& d);

/// Throws ParseError naming the line and the offending field.
CurveDump load_curve(const std::string& text);

}  // namespace peq

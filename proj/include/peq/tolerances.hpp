#pragma once

// Every numeric threshold used by the map, the lift and the pruning.

namespace peq {

struct Tolerances {
    // Evaluation switches to the reciprocal chart beyond this magnitude ...
    double pole_magnitude = 1e8;
    // ... or when |denominator| falls below this fraction of |numerator|.
    double pole_denominator_ratio = 1e-12;

    // Critical values closer than this (chordal) are considered equal.
    double critical_collision = 1e-13;

    // Required agreement between F(lifted sample) and its parent sample.
    double lift_fidelity = 1e-10;
    // The parameter-0 sample must stay this close to 1.
    double anchor = 1e-10;
    // Allowed mismatch when stitching two arc lifts, and when closing the loop.
    double stitch = 1e-8;

    // A step is ambiguous when near/far root distance reaches this ratio.
    double branch_ambiguity = 0.5;
    // Lifted steps longer than this (chordal) are refined.
    double max_lift_step = 0.1;
    // ... and so are steps whose chord strays from the lifted arc by more than
    // this fraction of the distance to the nearest possible postcritical point.
    double chord_deviation_ratio = 0.25;
    int max_refinements = 8;

    // Pruning: clearance of P_g points from a shortcut segment, and the
    // longest shortcut allowed.
    double prune_clearance = 1e-4;
    double prune_max_segment = 1.0;
    // Smallest corner (radians) pruning may leave at a marked point.
    double prune_min_mark_angle = 0.5;
};

inline constexpr Tolerances kTolerances{};

}  // namespace peq

#pragma once

// A discretized pseudo-equator: circularly ordered samples with exact
// parameters in [0, 1) and floating positions on the sphere.

#include <optional>
#include <vector>

#include "peq/mating.hpp"
#include "peq/param.hpp"
#include "peq/sphere.hpp"

namespace peq {

struct CurveSample {
    Param parameter;
    SpherePoint position;
    std::optional<std::size_t> mark;  ///< index into the curve's schedule marks
};

struct DiscreteCurve {
    int level = 0;
    Schedule schedule;
    std::vector<CurveSample> samples;  ///< strictly increasing parameters, first one 0

    /// Index of the sample with this exact parameter.
    std::optional<std::size_t> index_of(const Param& t) const;
    const SpherePoint& position_at(const Param& t) const;

    /// Positions of the postcritical marks, by id (index id - 1).
    std::vector<SpherePoint> postcritical_positions() const;

    /// Checks ordering, the parameter-0 sample and that every mark of the
    /// schedule is realized by exactly one sample. Throws StructuralError.
    void validate() const;
};

/// exp(2 pi i t), exact at quarter turns.
SpherePoint unit_circle_point(const Param& t);

/// Level-0 embedding t -> exp(2 pi i t) with samples_per_arc plumbing samples
/// between consecutive marks, plus a sample at parameter 0.
DiscreteCurve init_embedding(const Schedule& s, int samples_per_arc);

/// Re-marks the curve against another schedule; samples whose parameters are
/// not in `s` become plumbing.
DiscreteCurve with_schedule(DiscreteCurve c, const Schedule& s);

}  // namespace peq

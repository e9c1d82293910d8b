#pragma once

// The pullback iteration: read the critical values off the current curve,
// build F_n, lift the curve through F_n, relabel, prune, repeat.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "peq/curve.hpp"
#include "peq/mating.hpp"
#include "peq/rational_map.hpp"
#include "peq/tolerances.hpp"

namespace peq {

/// Positions at the black critical value parameter (alpha) and the red one
/// (1 - beta). Throws StructuralError("critical value collision") when they meet.
std::pair<SpherePoint, SpherePoint> read_critical_values(const DiscreteCurve& c);

struct LiftStats {
    double max_fidelity_error = 0.0;  ///< max chordal |F(lifted) - parent|
    std::size_t refinements = 0;      ///< midpoints inserted for branch safety
};

/// Lifts c through F. The result is parameterized so that the sample at t maps
/// to the parent sample at 2t, starts at 1 for t = 0, and carries s_next's
/// marks. Throws NumericError("branch tracking lost ...") when continuity
/// cannot be established. Arcs are lifted on up to `threads` threads; the
/// result does not depend on the thread count.
DiscreteCurve pullback_curve(const DiscreteCurve& c, const NormalizedQuadratic& f, const Schedule& s_next,
                             int threads = 1, LiftStats* stats = nullptr);

/// New positions of the postcritical points, by id.
std::vector<SpherePoint> relabel(const DiscreteCurve& c_next);

/// Greedily drops plumbing samples (smallest swept triangle first) until the
/// budget is met or no removal is safe. A removal is unsafe when a postcritical
/// point lies in the swept triangle or within `tol` of the shortcut.
DiscreteCurve prune(const DiscreteCurve& c, std::size_t budget, double tol = kTolerances.prune_clearance);

struct IterateOptions {
    int max_iters = 200;
    double tol = 1e-9;
    int samples_per_arc = 64;
    std::size_t budget = 4096;
    int min_iters = 0;  ///< keep iterating at least this long even when converged
    int threads = 1;
    /// Called with every curve C_n (n = 0, 1, ...) after pruning.
    std::function<void(const DiscreteCurve&)> on_curve;
};

enum class RunStatus { Converged, MaxIterations, Diverged, StructuralError, NumericError };

const char* status_name(RunStatus s);

/// 0 for converged, 2 for structural failures, 3 for numeric ones.
int exit_code(RunStatus s);

struct IterationRecord {
    int n = 0;
    SpherePoint u;
    SpherePoint v;
    std::size_t samples_before = 0;  ///< lifted samples, before pruning
    std::size_t samples_after = 0;
    double displacement = 0.0;       ///< max chordal motion of a postcritical point
    double increment = 0.0;          ///< chordal(u_{n-1}, u_n) + chordal(v_{n-1}, v_n)
    double lift_error = 0.0;
};

struct RunReport {
    Angle alpha;
    Angle beta;
    IterateOptions options;
    std::size_t postcritical_count = 0;
    bool orbifold_warning = false;
    std::vector<IterationRecord> records;  ///< record n describes C_n; record 0 is the unit circle
    RunStatus status = RunStatus::StructuralError;
    std::string reason;
    std::optional<NormalizedQuadratic> final_map;

    bool ok() const { return status == RunStatus::Converged; }
};

/// Runs the whole algorithm. Structural and numeric failures end up in the
/// report's status rather than being thrown.
RunReport iterate(const Angle& alpha, const Angle& beta, const IterateOptions& opts = {});

/// Deterministic text rendering of a run report.
std::string format_report(const RunReport& r, const std::string& run_id);

}  // namespace peq

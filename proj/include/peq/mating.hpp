#pragma once

// Combinatorics of the essential mating of f_alpha (black) and f_beta (red):
// ray-equivalence classes, the essential identifications, the structural
// gates, and the marked-parameter schedules on the pseudo-equator curves.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "peq/angle.hpp"
#include "peq/lamination.hpp"
#include "peq/param.hpp"

namespace peq {

enum class Side { Black, Red };

const char* side_name(Side s);

/// An external angle of one of the two polynomials. Red angles are kept as
/// polynomial-side angles; the curve parameter of red angle s is 1 - s.
struct SideAngle {
    Side side = Side::Black;
    Angle angle;

    /// Parameter on the equator where this ray meets it.
    Angle curve_parameter() const { return side == Side::Black ? angle : negated(angle); }

    friend bool operator==(const SideAngle&, const SideAngle&) = default;
    friend auto operator<=>(const SideAngle&, const SideAngle&) = default;
};

std::string to_string(const SideAngle& s);

/// Postcritical SideAngles landing at one point of the essential mating.
struct EssentialClass {
    std::vector<SideAngle> members;        ///< tracked orbit angles, sorted
    std::size_t image = 0;                 ///< index of the class holding the doubled members
    bool collapsed = false;                ///< true when this is a nontrivial ~_e class
    std::vector<Angle> curve_parameters;   ///< equator parameters touched by the class
    std::string ray_graph;                 ///< human-readable ray graph, for diagnostics
};

/// Everything the structural gates need to know about one angle pair.
struct MatingStructure {
    Angle alpha;
    Angle beta;
    std::optional<LimbId> black_limb;
    std::optional<LimbId> red_limb;
    bool mateable = false;

    std::vector<EssentialClass> classes;   ///< empty when not mateable
    std::size_t black_critical_value = 0;  ///< class index of black alpha
    std::size_t red_critical_value = 0;    ///< class index of red beta

    bool jordan = false;
    std::string pinch;        ///< pinching class, when not Jordan
    bool fsr_valid = false;
    std::string fsr_witness;  ///< violating pair, when the subdivision rule fails

    std::size_t postcritical_count() const { return classes.size(); }
    bool critical_values_identified() const { return black_critical_value == red_critical_value; }
    bool orbifold_warning() const { return classes.size() <= 4; }
    bool gates_pass() const { return mateable && jordan && fsr_valid && !critical_values_identified(); }
};

/// Runs every combinatorial computation for (alpha, beta). Throws InvalidArgument
/// when either angle is not strictly preperiodic.
MatingStructure analyze_mating(const Angle& alpha, const Angle& beta);

std::vector<EssentialClass> essential_classes(const Angle& alpha, const Angle& beta);
bool is_jordan(const Angle& alpha, const Angle& beta);
bool fsr_valid(const Angle& alpha, const Angle& beta);

enum class MarkKind { Postcritical, CriticalPoint, Plumbing };

const char* mark_kind_name(MarkKind k);

struct Mark {
    Param parameter;
    MarkKind kind = MarkKind::Plumbing;
    int id = 0;                 ///< 1-based postcritical id, for Postcritical marks
    Side color = Side::Black;   ///< for CriticalPoint marks
    std::optional<std::size_t> class_index;

    friend bool operator==(const Mark&, const Mark&) = default;
};

/// Marked parameters of the curve C_n, ascending in [0, 1).
struct Schedule {
    int level = 0;
    std::vector<Mark> marks;
    Angle black_critical_value;   ///< parameter alpha
    Angle red_critical_value;     ///< parameter 1 - beta
    std::vector<Angle> postcritical;  ///< parameter of postcritical id k at index k - 1

    std::optional<std::size_t> find(const Param& t) const;
    std::vector<Param> parameters() const;
    std::size_t postcritical_count() const { return postcritical.size(); }
};

/// Level-0 schedule: one Postcritical mark per point of P_g, numbered by
/// ascending parameter with parameter 0 last. Throws StructuralError when the
/// pair fails a gate or the critical values are identified.
Schedule base_schedule(const Angle& alpha, const Angle& beta);
Schedule base_schedule(const MatingStructure& m);

/// Level n+1 schedule: every half of every level-n parameter.
Schedule pullback_schedule(const Schedule& s);

}  // namespace peq

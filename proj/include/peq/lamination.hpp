#pragma once

// Co-landing of external rays for a critically preperiodic quadratic polynomial
// f_theta, and the limb test that decides mateability.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "peq/angle.hpp"

namespace peq {

/// A chord of the unit disk joining two distinct angles. Stored with first < second.
class Leaf {
public:
    Leaf(const Angle& a, const Angle& b);

    const Angle& first() const noexcept { return first_; }
    const Angle& second() const noexcept { return second_; }

    friend bool operator==(const Leaf&, const Leaf&) = default;
    friend auto operator<=>(const Leaf&, const Leaf&) = default;

private:
    Angle first_;
    Angle second_;
};

/// Strict interleaving of endpoints. Leaves sharing an endpoint do not cross.
bool crosses(const Leaf& a, const Leaf& b);

/// {theta/2, theta/2 + 1/2}. Throws InvalidArgument for periodic theta.
Leaf critical_leaf(const Angle& theta);

/// The critical leaf and its iterated preimages up to `depth` generations
/// (2^depth - 1 leaves). Preimage pairs are chosen on one side of the critical leaf.
std::set<Leaf> pullback_lamination(const Angle& theta, int depth);

/// The two preimage leaves of `leaf` that do not cross the critical leaf of theta.
std::pair<Leaf, Leaf> preimage_leaves(const Angle& theta, const Leaf& leaf);

/// Partition of a finite angle set into co-landing classes; each class is sorted.
struct LandingPartition {
    std::vector<std::vector<Angle>> classes;

    /// Index of the class holding `a`, or nullopt.
    std::optional<std::size_t> class_of(const Angle& a) const;
};

/// Landing relation of the dynamic rays of f_theta.
///
/// Two rational angles land together iff their itineraries relative to the
/// critical leaf agree, where an angle whose orbit reaches the critical point
/// is identified by its itinerary up to that moment. Finite itineraries are
/// exact because rational orbits are eventually periodic.
class LandingModel {
public:
    explicit LandingModel(const Angle& theta);

    const Angle& theta() const noexcept { return theta_; }
    const Leaf& critical() const noexcept { return critical_; }

    /// Canonical landing-point key; equal keys <=> same landing point.
    std::string key(const Angle& t) const;

    bool co_land(const Angle& a, const Angle& b) const { return key(a) == key(b); }

    /// Every angle landing at the same point as `t`, ascending. Enumerates the
    /// angles sharing t's preperiod and period; throws InvalidArgument if that
    /// set exceeds kMaxEnumeration.
    std::vector<Angle> landing_class(const Angle& t) const;

    static constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 22;

private:
    char symbol(const Angle& x) const;

    Angle theta_;
    Leaf critical_;
    std::string theta_word_;
    mutable std::unordered_map<std::uint64_t, std::unordered_map<std::string, std::vector<Angle>>> by_denominator_;
};

LandingPartition landing_partition(const Angle& theta, const std::vector<Angle>& angles);

/// Result of grouping angles by chains of finitely many lamination leaves.
struct LeafChainPartition {
    LandingPartition partition;
    int depth = 0;  ///< generation count at which the partition stabilized
};

/// Angles joined by a chain of leaves of the pulled-back lamination, iterated
/// until the induced partition is unchanged for two consecutive depths past
/// (max preperiod + 2 * period) + 4. Only leaves whose endpoints share a
/// preperiod/period family with a tracked angle are followed. Throws
/// NumericError if not stable by depth max(64, that threshold + 1).
///
/// Finite chains never reach periodic landing classes (those are limits of
/// leaves), so this is a refinement of landing_partition, used as a cross-check.
LeafChainPartition leaf_chain_partition(const Angle& theta, const std::vector<Angle>& angles);

/// A primary limb of the Mandelbrot set, named by its rotation number p/q.
struct LimbId {
    Angle rotation;

    friend bool operator==(const LimbId&, const LimbId&) = default;
};

/// The q-periodic angles bounding the wake of the p/q limb.
std::pair<Angle, Angle> wake(const LimbId& limb);

/// Principal limb containing theta, searching q up to max(16, 1 + bitlen(den)).
std::optional<LimbId> limb_of(const Angle& theta);

/// False iff the parameters lie in complex conjugate limbs.
bool mateable(const Angle& alpha, const Angle& beta);

}  // namespace peq

#pragma once

// Exact rational angles on R/Z and the doubling map.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace peq {

/// A rational number in [0, 1), always stored in lowest terms.
///
/// Denominators are capped at 2^62 so that doubling and halving can be
/// checked for overflow without 128-bit storage.
class Angle {
public:
    static constexpr std::uint64_t kMaxDenominator = std::uint64_t{1} << 62;

    constexpr Angle() = default;

    /// (p mod q)/q in lowest terms. Throws InvalidArgument when q == 0 or q is too large.
    static Angle reduce(std::int64_t p, std::uint64_t q);

    /// Parses "p/q" or a bare integer ("0").
    static Angle parse(std::string_view text);

    std::uint64_t numerator() const noexcept { return num_; }
    std::uint64_t denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_ == 0; }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    /// Equality is structural; ordering is by value in [0, 1).
    friend bool operator==(const Angle&, const Angle&) = default;
    friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) noexcept;

private:
    constexpr Angle(std::uint64_t n, std::uint64_t d) : num_(n), den_(d) {}

    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Angle& a);

/// 2a mod 1.
Angle doubled(const Angle& a);

/// The two preimages under doubling: (a/2, a/2 + 1/2).
std::pair<Angle, Angle> halves(const Angle& a);

/// 1 - a mod 1.
Angle negated(const Angle& a);

/// (a + b) mod 1.
Angle added(const Angle& a, const Angle& b);

struct OrbitInfo {
    int preperiod = 0;
    int period = 1;
    /// Every distinct entry followed by the first repeat: size() == preperiod + period + 1.
    std::vector<Angle> orbit;
};

OrbitInfo orbit_info(const Angle& a);

/// True iff the doubling orbit of `a` is strictly preperiodic (even denominator).
bool is_preperiodic(const Angle& a);

/// Counterclockwise from `a`, is `b` reached before `c`? Requires pairwise distinct inputs.
bool cyclic_between(const Angle& a, const Angle& b, const Angle& c);

/// Strictly inside the counterclockwise open arc (lo, hi).
bool in_open_arc(const Angle& x, const Angle& lo, const Angle& hi);

__extension__ typedef unsigned __int128 uint128;

/// Length of the counterclockwise arc from `a` to `b`, as the exact pair (num, den).
std::pair<uint128, uint128> arc_length(const Angle& a, const Angle& b);

}  // namespace peq

template <>
struct std::hash<peq::Angle> {
    std::size_t operator()(const peq::Angle& a) const noexcept {
        return std::hash<std::uint64_t>{}(a.numerator() * 0x9e3779b97f4a7c15ULL ^ a.denominator());
    }
};

#include "peq/angle.hpp"

#include <charconv>
#include <numeric>
#include <unordered_map>

#include "peq/error.hpp"

namespace peq {

namespace {

using u128 = uint128;

std::uint64_t parse_u64(std::string_view s, std::string_view whole) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InvalidArgument("malformed angle '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Angle Angle::reduce(std::int64_t p, std::uint64_t q) {
    if (q == 0) throw InvalidArgument("angle denominator must be positive");
    if (q > kMaxDenominator) throw InvalidArgument("angle denominator exceeds 2^62");
    std::int64_t sq = static_cast<std::int64_t>(q);
    std::int64_t r = p % sq;
    if (r < 0) r += sq;
    auto n = static_cast<std::uint64_t>(r);
    std::uint64_t g = std::gcd(n, q);
    return Angle(n / g, q / g);
}

Angle Angle::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        parse_u64(text, text);
        return Angle{};  // integers are 0 mod 1
    }
    std::uint64_t n = parse_u64(text.substr(0, slash), text);
    std::uint64_t d = parse_u64(text.substr(slash + 1), text);
    if (d == 0) throw InvalidArgument("angle '" + std::string(text) + "' has zero denominator");
    if (d > kMaxDenominator) throw InvalidArgument("angle '" + std::string(text) + "' denominator exceeds 2^62");
    return reduce(static_cast<std::int64_t>(n % d), d);
}

std::string Angle::str() const {
    if (num_ == 0) return "0";
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Angle& a, const Angle& b) noexcept {
    u128 lhs = static_cast<u128>(a.num_) * b.den_;
    u128 rhs = static_cast<u128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.str(); }

Angle doubled(const Angle& a) {
    std::uint64_t n = a.numerator() * 2;  // < 2^63, no overflow
    std::uint64_t d = a.denominator();
    if (n >= d) n -= d;
    std::uint64_t g = std::gcd(n, d);
    return Angle::reduce(static_cast<std::int64_t>(n / g), d / g);
}

std::pair<Angle, Angle> halves(const Angle& a) {
    std::uint64_t d = a.denominator();
    if (d > Angle::kMaxDenominator / 2) throw InvalidArgument("halving " + a.str() + " overflows the denominator");
    auto n = static_cast<std::int64_t>(a.numerator());
    return {Angle::reduce(n, 2 * d), Angle::reduce(n + static_cast<std::int64_t>(d), 2 * d)};
}

Angle negated(const Angle& a) {
    return Angle::reduce(-static_cast<std::int64_t>(a.numerator()), a.denominator());
}

Angle added(const Angle& a, const Angle& b) {
    std::uint64_t l = std::lcm(a.denominator(), b.denominator());
    if (l > Angle::kMaxDenominator) throw InvalidArgument("angle sum overflows the denominator");
    u128 n = static_cast<u128>(a.numerator()) * (l / a.denominator()) +
             static_cast<u128>(b.numerator()) * (l / b.denominator());
    return Angle::reduce(static_cast<std::int64_t>(n % l), l);
}

OrbitInfo orbit_info(const Angle& a) {
    // The preperiod is the power of two in the denominator; after it the
    // orbit is purely periodic.
    OrbitInfo info;
    Angle x = a;
    for (std::uint64_t d = a.denominator(); d % 2 == 0; d /= 2) {
        info.orbit.push_back(x);
        x = doubled(x);
        ++info.preperiod;
    }
    const Angle start = x;
    do {
        info.orbit.push_back(x);
        x = doubled(x);
    } while (x != start);
    info.period = static_cast<int>(info.orbit.size()) - info.preperiod;
    info.orbit.push_back(start);
    return info;
}

bool is_preperiodic(const Angle& a) { return a.denominator() % 2 == 0; }

std::pair<u128, u128> arc_length(const Angle& a, const Angle& b) {
    // (b - a) mod 1 over the common denominator a.den * b.den.
    u128 den = static_cast<u128>(a.denominator()) * b.denominator();
    u128 bn = static_cast<u128>(b.numerator()) * a.denominator();
    u128 an = static_cast<u128>(a.numerator()) * b.denominator();
    u128 num = bn >= an ? bn - an : den - (an - bn);
    return {num, den};
}

namespace {

// n1/d1 < n2/d2 for 128-bit operands, where cross products would overflow.
// Compares continued-fraction expansions term by term.
bool fraction_less(u128 n1, u128 d1, u128 n2, u128 d2) {
    while (true) {
        u128 q1 = n1 / d1, q2 = n2 / d2;
        if (q1 != q2) return q1 < q2;
        u128 r1 = n1 % d1, r2 = n2 % d2;
        if (r1 == 0 || r2 == 0) return r1 == 0 && r2 != 0;
        // n1/d1 < n2/d2 with equal integer parts  <=>  d2/r2 < d1/r1
        n1 = d2;
        u128 t = d1;
        d1 = r2;
        n2 = t;
        d2 = r1;
    }
}

}  // namespace

bool cyclic_between(const Angle& a, const Angle& b, const Angle& c) {
    if (a == b || b == c || a == c) throw InvalidArgument("cyclic_between requires distinct angles");
    auto [nb, db] = arc_length(a, b);
    auto [nc, dc] = arc_length(a, c);
    return fraction_less(nb, db, nc, dc);
}

bool in_open_arc(const Angle& x, const Angle& lo, const Angle& hi) {
    if (x == lo || x == hi) return false;
    if (lo == hi) return true;
    return cyclic_between(lo, x, hi);
}

}  // namespace peq

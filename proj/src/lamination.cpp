#include "peq/lamination.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "peq/error.hpp"

namespace peq {

namespace {

void require_preperiodic(const Angle& theta, const char* what) {
    if (!is_preperiodic(theta)) {
        throw InvalidArgument(std::string(what) + ": angle " + theta.str() + " is not strictly preperiodic");
    }
}

// An eventually periodic symbol sequence pre + cyc + cyc + ...
struct Word {
    std::string pre;
    std::string cyc;
};

Word canonical(Word w) {
    const std::size_t n = w.cyc.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) periodic = w.cyc[i] == w.cyc[i % d];
        if (periodic) {
            w.cyc.resize(d);
            break;
        }
    }
    while (!w.pre.empty() && w.pre.back() == w.cyc.back()) {
        w.cyc = w.cyc.back() + w.cyc.substr(0, w.cyc.size() - 1);
        w.pre.pop_back();
    }
    return w;
}

// Symbols of the orbit of t: entries [0, preperiod + period).
struct Itinerary {
    int preperiod;
    int period;
    std::string symbols;

    Word tail(int i) const {
        if (i < preperiod) {
            return canonical({symbols.substr(i, preperiod - i), symbols.substr(preperiod)});
        }
        int j = (i - preperiod) % period;
        std::string cyc = symbols.substr(preperiod + j) + symbols.substr(preperiod, j);
        return canonical({"", cyc});
    }
};

std::uint64_t family_denominator(const OrbitInfo& info) {
    // Every angle with this preperiod and period has denominator dividing 2^p (2^r - 1).
    if (info.preperiod + info.period > 62) return 0;
    return (std::uint64_t{1} << info.preperiod) * ((std::uint64_t{1} << info.period) - 1);
}

class DisjointSets {
public:
    int add(const Angle& a) {
        auto [it, inserted] = index_.emplace(a, static_cast<int>(parent_.size()));
        if (inserted) parent_.push_back(it->second);
        return it->second;
    }
    int find(int i) {
        while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
        return i;
    }
    void unite(const Angle& a, const Angle& b) {
        int ra = find(add(a)), rb = find(add(b));
        if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
    }

private:
    std::unordered_map<Angle, int> index_;
    std::vector<int> parent_;
};

LandingPartition group_by(const std::vector<Angle>& angles, auto&& key_of) {
    std::vector<Angle> sorted = angles;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    LandingPartition out;
    std::vector<decltype(key_of(sorted.front()))> keys;
    for (const auto& a : sorted) {
        auto k = key_of(a);
        auto it = std::find(keys.begin(), keys.end(), k);
        if (it == keys.end()) {
            keys.push_back(k);
            out.classes.push_back({a});
        } else {
            out.classes[static_cast<std::size_t>(it - keys.begin())].push_back(a);
        }
    }
    return out;
}

}  // namespace

Leaf::Leaf(const Angle& a, const Angle& b) : first_(std::min(a, b)), second_(std::max(a, b)) {
    if (a == b) throw InvalidArgument("leaf endpoints must be distinct (" + a.str() + ")");
}

bool crosses(const Leaf& a, const Leaf& b) {
    const Angle& x = b.first();
    const Angle& y = b.second();
    if (x == a.first() || x == a.second() || y == a.first() || y == a.second()) return false;
    bool x_in = a.first() < x && x < a.second();
    bool y_in = a.first() < y && y < a.second();
    return x_in != y_in;
}

Leaf critical_leaf(const Angle& theta) {
    require_preperiodic(theta, "critical_leaf");
    auto [a, b] = halves(theta);
    return Leaf(a, b);
}

std::pair<Leaf, Leaf> preimage_leaves(const Angle& theta, const Leaf& leaf) {
    auto [c1, c2] = halves(theta);
    auto [a1, a2] = halves(leaf.first());
    auto [b1, b2] = halves(leaf.second());
    for (const Angle* x : {&a1, &a2, &b1, &b2}) {
        if (*x == c1 || *x == c2) throw InvalidArgument("leaf touches the critical value " + theta.str());
    }
    // Each open half-circle cut by the critical leaf holds exactly one preimage of every angle.
    if (in_open_arc(a1, c1, c2) == in_open_arc(b1, c1, c2)) return {Leaf(a1, b1), Leaf(a2, b2)};
    return {Leaf(a1, b2), Leaf(a2, b1)};
}

std::set<Leaf> pullback_lamination(const Angle& theta, int depth) {
    if (depth <= 0) throw InvalidArgument("pullback_lamination depth must be positive");
    if (depth > 24) throw InvalidArgument("pullback_lamination depth is limited to 24 generations");
    std::set<Leaf> all;
    std::vector<Leaf> generation{critical_leaf(theta)};
    for (int d = 1; d <= depth; ++d) {
        all.insert(generation.begin(), generation.end());
        if (d == depth) break;
        std::vector<Leaf> next;
        next.reserve(generation.size() * 2);
        for (const Leaf& leaf : generation) {
            auto [p, q] = preimage_leaves(theta, leaf);
            next.push_back(p);
            next.push_back(q);
        }
        generation = std::move(next);
    }
    return all;
}

std::optional<std::size_t> LandingPartition::class_of(const Angle& a) const {
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (std::find(classes[i].begin(), classes[i].end(), a) != classes[i].end()) return i;
    }
    return std::nullopt;
}

LandingModel::LandingModel(const Angle& theta) : theta_(theta), critical_(critical_leaf(theta)) {
    std::string k = key(theta_);
    // theta is not precritical, so its key is a plain word.
    theta_word_ = k.substr(1);
}

char LandingModel::symbol(const Angle& x) const {
    if (x == critical_.first() || x == critical_.second()) return '*';
    return in_open_arc(x, critical_.first(), critical_.second()) ? '1' : '0';
}

std::string LandingModel::key(const Angle& t) const {
    OrbitInfo info = orbit_info(t);
    Itinerary it{info.preperiod, info.period, {}};
    const int len = info.preperiod + info.period;
    it.symbols.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) it.symbols.push_back(symbol(info.orbit[static_cast<std::size_t>(i)]));

    auto flat = [](const Word& w) { return w.pre + "|" + w.cyc; };
    if (!theta_word_.empty()) {
        // First n with 2^(n+1) t landing at the critical value: 2^n t lands at the critical point.
        for (int n = 0; n < len; ++n) {
            if (flat(it.tail(n + 1)) == theta_word_) return "c" + it.symbols.substr(0, static_cast<std::size_t>(n));
        }
    }
    return "w" + flat(it.tail(0));
}

std::vector<Angle> LandingModel::landing_class(const Angle& t) const {
    std::uint64_t n = family_denominator(orbit_info(t));
    if (n == 0 || n > kMaxEnumeration) {
        throw InvalidArgument("landing class of " + t.str() + " is too large to enumerate");
    }
    auto& table = by_denominator_[n];
    if (table.empty()) {
        for (std::uint64_t k = 0; k < n; ++k) {
            Angle a = Angle::reduce(static_cast<std::int64_t>(k), n);
            table[key(a)].push_back(a);
        }
        for (auto& [_, v] : table) std::sort(v.begin(), v.end());
    }
    return table.at(key(t));
}

LandingPartition landing_partition(const Angle& theta, const std::vector<Angle>& angles) {
    if (angles.empty()) return {};
    LandingModel model(theta);
    return group_by(angles, [&](const Angle& a) { return model.key(a); });
}

LeafChainPartition leaf_chain_partition(const Angle& theta, const std::vector<Angle>& angles) {
    Leaf crit = critical_leaf(theta);
    std::vector<std::uint64_t> families;
    int min_depth = 0;
    auto track = [&](const Angle& a) {
        OrbitInfo info = orbit_info(a);
        min_depth = std::max(min_depth, info.preperiod + 2 * info.period + 4);
        if (std::uint64_t n = family_denominator(info); n != 0) families.push_back(n);
    };
    track(theta);
    track(crit.first());
    for (const auto& a : angles) track(a);
    auto in_family = [&](const Angle& a) {
        return std::any_of(families.begin(), families.end(),
                           [&](std::uint64_t n) { return n % a.denominator() == 0; });
    };

    DisjointSets sets;
    for (const auto& a : angles) sets.add(a);
    std::set<Leaf> seen{crit};
    std::vector<Leaf> generation{crit};
    std::optional<LandingPartition> previous;
    // Long periods need more than the usual 64 generations before the
    // partition may be called stable.
    const int max_depth = std::max(64, min_depth + 1);

    for (int depth = 1; depth <= max_depth; ++depth) {
        for (const Leaf& leaf : generation) sets.unite(leaf.first(), leaf.second());
        LandingPartition current = group_by(angles, [&](const Angle& a) { return sets.find(sets.add(a)); });
        bool stable = previous && previous->classes == current.classes;
        if (stable && depth >= min_depth) return {std::move(current), depth};
        previous = std::move(current);

        std::vector<Leaf> next;
        for (const Leaf& leaf : generation) {
            auto [p, q] = preimage_leaves(theta, leaf);
            for (const Leaf& pre : {p, q}) {
                if (in_family(pre.first()) && in_family(pre.second()) && seen.insert(pre).second) {
                    next.push_back(pre);
                }
            }
        }
        generation = std::move(next);
    }
    throw NumericError("leaf-chain partition for theta " + theta.str() + " did not stabilize by depth " +
                       std::to_string(max_depth));
}

std::pair<Angle, Angle> wake(const LimbId& limb) {
    const std::uint64_t p = limb.rotation.numerator();
    const std::uint64_t q = limb.rotation.denominator();
    if (p == 0 || q < 2) throw InvalidArgument("limb rotation must satisfy 0 < p/q < 1");
    if (q > 62) throw InvalidArgument("limb period too large");
    const std::uint64_t period_den = (std::uint64_t{1} << q) - 1;

    // The unique q-cycle with rotation number p/q: in circular order y_0 < ... < y_{q-1},
    // doubling sends y_j to y_{j+p}, and y_j >= 1/2 exactly for j >= q - p. Reading binary
    // digits along the orbit gives each y_j directly.
    std::vector<std::uint64_t> cycle;
    for (std::uint64_t j = 0; j < q; ++j) {
        std::uint64_t num = 0;
        for (std::uint64_t k = 0; k < q; ++k) {
            num = (num << 1) | (((j + k * p) % q) >= q - p ? 1u : 0u);
        }
        cycle.push_back(num);
    }
    std::sort(cycle.begin(), cycle.end());

    // The wake is the shortest gap between circularly consecutive cycle points.
    auto gap = [&](std::size_t i) {
        std::uint64_t a = cycle[i], b = cycle[(i + 1) % q];
        return b > a ? b - a : period_den - (a - b);
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < q; ++i) {
        if (gap(i) < gap(best)) best = i;
    }
    auto angle = [&](std::uint64_t n) { return Angle::reduce(static_cast<std::int64_t>(n), period_den); };
    return {angle(cycle[best]), angle(cycle[(best + 1) % q])};
}

std::optional<LimbId> limb_of(const Angle& theta) {
    int bits = std::bit_width(theta.denominator());
    int max_q = std::min(62, std::max(16, 1 + bits));
    for (int q = 2; q <= max_q; ++q) {
        for (int p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            LimbId limb{Angle::reduce(p, static_cast<std::uint64_t>(q))};
            auto [lo, hi] = wake(limb);
            if (in_open_arc(theta, lo, hi)) return limb;
        }
    }
    return std::nullopt;
}

bool mateable(const Angle& alpha, const Angle& beta) {
    require_preperiodic(alpha, "mateable");
    require_preperiodic(beta, "mateable");
    auto la = limb_of(alpha);
    auto lb = limb_of(beta);
    if (!la || !lb) return true;
    return !(lb->rotation == negated(la->rotation));
}

}  // namespace peq

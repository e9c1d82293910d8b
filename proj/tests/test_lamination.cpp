#include <doctest.h>

#include "oracles.hpp"
#include "peq/error.hpp"
#include "peq/lamination.hpp"

using peq::Angle;
using peq::Leaf;

namespace {

Angle A(const char* s) { return Angle::parse(s); }

std::vector<std::pair<Angle, Angle>> chords(const std::set<Leaf>& leaves) {
    std::vector<std::pair<Angle, Angle>> out;
    for (const auto& l : leaves) out.emplace_back(l.first(), l.second());
    return out;
}

}  // namespace

TEST_CASE("critical leaf") {
    CHECK(peq::critical_leaf(A("1/4")) == Leaf(A("1/8"), A("5/8")));
    CHECK(peq::critical_leaf(A("1/6")) == Leaf(A("1/12"), A("7/12")));
    CHECK(peq::critical_leaf(A("1/8")) == Leaf(A("1/16"), A("9/16")));
    CHECK_THROWS_AS(peq::critical_leaf(A("1/3")), peq::InvalidArgument);
}

TEST_CASE("pullback lamination, shallow depths") {
    CHECK(peq::pullback_lamination(A("1/4"), 1) == std::set<Leaf>{Leaf(A("1/8"), A("5/8"))});
    CHECK_THROWS_AS(peq::pullback_lamination(A("1/4"), 0), peq::InvalidArgument);

    // Oracle: of the two ways to pair the preimages {1/16, 9/16} x {5/16, 13/16},
    // keep the one whose leaves cross neither each other nor the critical leaf.
    const Leaf crit(A("1/8"), A("5/8"));
    std::set<Leaf> expected;
    for (int pairing = 0; pairing < 2; ++pairing) {
        const Leaf l1(A("1/16"), pairing == 0 ? A("5/16") : A("13/16"));
        const Leaf l2(A("9/16"), pairing == 0 ? A("13/16") : A("5/16"));
        if (!oracle::any_crossing({{l1.first(), l1.second()}, {l2.first(), l2.second()}, {crit.first(), crit.second()}})) {
            CHECK(expected.empty());
            expected = {crit, l1, l2};
        }
    }
    CHECK(expected == std::set<Leaf>{crit, Leaf(A("1/16"), A("13/16")), Leaf(A("5/16"), A("9/16"))});
    CHECK(peq::pullback_lamination(A("1/4"), 2) == expected);
}

TEST_CASE("the nesting check agrees with the pairwise crossing oracle") {
    oracle::Gen g(17);
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<std::pair<Angle, Angle>> cs;
        const int n = 1 + static_cast<int>(g.below(6));
        for (int i = 0; i < n; ++i) {
            Angle a = g.angle(12), b = g.angle(12);
            if (a == b) continue;
            if (b < a) std::swap(a, b);
            if (std::find(cs.begin(), cs.end(), std::pair{a, b}) == cs.end()) cs.emplace_back(a, b);
        }
        CHECK(oracle::nested(cs) == !oracle::any_crossing(cs));
    }
}

TEST_CASE("property: leaf counts and non-crossing, denominators up to 256, depth 12") {
    int thetas = 0;
    for (std::uint64_t q = 2; q <= 256; q += 2) {
        for (std::uint64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Angle theta = Angle::reduce(static_cast<std::int64_t>(p), q);
            const auto lam = peq::pullback_lamination(theta, 12);
            if (lam.size() != 4095u) FAIL("leaf count for " << theta.str());
            if (!oracle::nested(chords(lam))) FAIL("crossing leaves for " << theta.str());
            ++thetas;
        }
    }
    CHECK(thetas > 6000);
}

TEST_CASE("property: leaf count is 2^d - 1 and images of new leaves are old leaves") {
    oracle::Gen g(23);
    for (int trial = 0; trial < 200; ++trial) {
        const Angle theta = g.preperiodic_angle(200);
        const int d = 1 + static_cast<int>(g.below(9));
        const auto lam = peq::pullback_lamination(theta, d);
        CHECK(lam.size() == (std::size_t{1} << d) - 1);
        if (d == 1) continue;
        const auto shallower = peq::pullback_lamination(theta, d - 1);
        const Leaf crit = peq::critical_leaf(theta);
        for (const auto& l : lam) {
            if (l == crit) continue;
            const Leaf image(peq::doubled(l.first()), peq::doubled(l.second()));
            CHECK(shallower.count(image) == 1);
        }
    }
}

TEST_CASE("landing partition examples") {
    const auto p = peq::landing_partition(A("1/4"), {A("1/4"), A("1/2"), A("0")});
    CHECK(p.classes.size() == 3);
    CHECK(peq::landing_partition(A("1/4"), {}).classes.empty());
    CHECK(peq::landing_partition(A("1/4"), {A("1/3")}).classes.size() == 1);
}

TEST_CASE("landing model: known co-landing pairs") {
    // Two rays land at the alpha fixed point of the basilica-limb maps, the
    // 1/7, 2/7, 4/7 cycle lands together for f_{1/4}.
    peq::LandingModel m(A("1/4"));
    CHECK(m.co_land(A("1/7"), A("2/7")));
    CHECK(m.co_land(A("2/7"), A("4/7")));
    CHECK_FALSE(m.co_land(A("1/4"), A("1/2")));
    CHECK(m.co_land(A("1/8"), A("5/8")));
    CHECK(m.landing_class(A("1/7")) == std::vector<Angle>{A("1/7"), A("2/7"), A("4/7")});
}

TEST_CASE("property: landing classes are forward invariant and refine leaf chains") {
    oracle::Gen g(29);
    for (int trial = 0; trial < 60; ++trial) {
        const Angle theta = g.preperiodic_angle(40);
        std::vector<Angle> angles;
        for (const auto& a : peq::orbit_info(theta).orbit) angles.push_back(a);
        const auto ch = peq::critical_leaf(theta);
        angles.push_back(ch.first());
        angles.push_back(ch.second());
        // Two generations of preimages of the orbit, where co-landing happens.
        for (int gen = 0; gen < 2; ++gen) {
            const std::size_t n = angles.size();
            for (std::size_t i = 0; i < n; ++i) {
                const auto [h0, h1] = peq::halves(angles[i]);
                angles.push_back(h0);
                angles.push_back(h1);
            }
        }
        std::sort(angles.begin(), angles.end());
        angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

        const auto part = peq::landing_partition(theta, angles);
        std::size_t total = 0;
        for (const auto& cls : part.classes) total += cls.size();
        CHECK(total == angles.size());

        peq::LandingModel model(theta);
        for (const auto& cls : part.classes) {
            for (std::size_t i = 1; i < cls.size(); ++i) {
                CHECK(model.co_land(peq::doubled(cls[0]), peq::doubled(cls[i])));
            }
        }
        // Finite leaf chains only ever join angles that land together.
        const auto chains = peq::leaf_chain_partition(theta, angles);
        for (const auto& cls : chains.partition.classes) {
            for (std::size_t i = 1; i < cls.size(); ++i) CHECK(part.class_of(cls[0]) == part.class_of(cls[i]));
        }
    }
}

TEST_CASE("wakes match the brute-force rotation oracle") {
    CHECK(peq::wake({A("1/2")}) == std::pair{A("1/3"), A("2/3")});
    CHECK(peq::wake({A("1/3")}) == std::pair{A("1/7"), A("2/7")});
    CHECK(peq::wake({A("2/3")}) == std::pair{A("5/7"), A("6/7")});
    for (std::uint64_t q = 2; q <= 12; ++q) {
        for (std::uint64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Angle rot = Angle::reduce(static_cast<std::int64_t>(p), q);
            CAPTURE(rot.str());
            const auto w = peq::wake({rot});
            CHECK(w == oracle::brute_wake(p, q));
            // Mirror image under t -> 1 - t.
            const auto m = peq::wake({Angle::reduce(static_cast<std::int64_t>(q - p), q)});
            CHECK(m.first == peq::negated(w.second));
            CHECK(m.second == peq::negated(w.first));
        }
    }
    CHECK_THROWS_AS(peq::wake({A("0")}), peq::InvalidArgument);
}

TEST_CASE("limbs") {
    CHECK(peq::limb_of(A("1/4"))->rotation == A("1/3"));
    CHECK(peq::limb_of(A("1/8"))->rotation == A("1/4"));
    CHECK(peq::limb_of(A("3/4"))->rotation == A("2/3"));
    CHECK(peq::limb_of(A("13/14"))->rotation == A("3/4"));
}

TEST_CASE("mateability") {
    CHECK(peq::mateable(A("1/4"), A("1/8")));
    CHECK(peq::mateable(A("1/4"), A("1/4")));
    CHECK_FALSE(peq::mateable(A("1/4"), A("3/4")));
}

TEST_CASE("property: mateability is symmetric and matches the limb oracle") {
    oracle::Gen g(31);
    for (int trial = 0; trial < 400; ++trial) {
        const Angle a = g.preperiodic_angle(64), b = g.preperiodic_angle(64);
        CHECK(peq::mateable(a, b) == peq::mateable(b, a));
        const auto la = peq::limb_of(a), lb = peq::limb_of(b);
        const bool conjugate = la && lb && la->rotation == peq::negated(lb->rotation);
        CHECK(peq::mateable(a, b) == !conjugate);
        // limb_of(theta) = p/q means theta is inside the brute-force wake.
        if (la) {
            const auto w = oracle::brute_wake(la->rotation.numerator(), la->rotation.denominator());
            CHECK(peq::in_open_arc(a, w.first, w.second));
        }
    }
}

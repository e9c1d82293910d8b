#include "peq/pullback.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <set>
#include <thread>
#include <unordered_map>

#include "peq/error.hpp"

namespace peq {

std::pair<SpherePoint, SpherePoint> read_critical_values(const DiscreteCurve& c) {
    const SpherePoint& u = c.position_at(to_param(c.schedule.black_critical_value));
    const SpherePoint& v = c.position_at(to_param(c.schedule.red_critical_value));
    if (chordal_distance(u, v) < kTolerances.critical_collision) {
        throw StructuralError("critical value collision at level " + std::to_string(c.level));
    }
    return {u, v};
}

namespace {

struct Node {
    Param t;  // parent parameter, 1 stands for the closing return to 0
    SpherePoint w;
};

struct Lifted {
    Param t;  // child parameter in [0, 1]
    SpherePoint z;
    SpherePoint w;  // the parent position it must map to
};

struct Arc {
    int pass;  // 0 lifts onto [0, 1/2], 1 onto [1/2, 1]; only pass 0 is lifted directly
    std::size_t first;
    std::size_t last;
};

class ArcLifter {
public:
    // `guards` holds every point that may become postcritical on the lifted
    // curve: the preimages of the parent's postcritical positions.
    ArcLifter(const NormalizedQuadratic& f, std::vector<SpherePoint> guards) : f_(f), guards_(std::move(guards)) {}

    // Lift of nodes[first..last] starting from the principal preimage of the
    // first node. The other lift is its negation.
    std::vector<Lifted> lift(const std::vector<Node>& nodes, const Arc& arc, std::size_t& refinements) const {
        const Param offset = arc.pass == 0 ? Param(0) : Param(1, 2);
        std::vector<Lifted> out;
        const auto start = f_.preimages(nodes[arc.first].w);
        const bool critical_start = start.first == start.second;
        out.push_back({nodes[arc.first].t / 2 + offset, start.first, nodes[arc.first].w});
        for (std::size_t j = arc.first + 1; j <= arc.last; ++j) {
            step(nodes[j - 1], nodes[j], critical_start && j == arc.first + 1, 0, offset, out, refinements);
        }
        return out;
    }

private:
    void step(const Node& a, const Node& b, bool free, int depth, const Param& offset, std::vector<Lifted>& out,
              std::size_t& refinements) const {
        const SpherePoint from = out.back().z;
        const auto roots = f_.preimages(b.w);
        SpherePoint chosen = roots.first;
        double near = chordal_distance(from, roots.first);
        double ratio = 0.0;
        if (!free && !(roots.first == roots.second)) {
            double far = chordal_distance(from, roots.second);
            if (far < near) {
                chosen = roots.second;
                std::swap(near, far);
            }
            ratio = near / std::max(far, std::numeric_limits<double>::min());
        }
        const bool ambiguous = ratio >= kTolerances.branch_ambiguity;
        bool coarse = near > kTolerances.max_lift_step;
        std::optional<Node> mid;
        if (!ambiguous && !coarse && depth < kTolerances.max_refinements && !(from == chosen)) {
            // The chord must follow the lifted arc closely, or it could pass
            // on the wrong side of a postcritical point.
            mid = Node{(a.t + b.t) / 2, great_circle_midpoint(a.w, b.w)};
            const auto mr = f_.preimages(mid->w);
            const double d1 = chordal_distance(mr.first, chosen) + chordal_distance(mr.first, from);
            const double d2 = chordal_distance(mr.second, chosen) + chordal_distance(mr.second, from);
            const SpherePoint arc_mid = d1 <= d2 ? mr.first : mr.second;
            const double deviation = chordal_distance(arc_mid, great_circle_midpoint(from, chosen));
            coarse = deviation > kTolerances.chord_deviation_ratio * clearance(arc_mid, from, chosen);
        }
        if ((ambiguous || coarse) && depth < kTolerances.max_refinements) {
            if (!mid) mid = Node{(a.t + b.t) / 2, great_circle_midpoint(a.w, b.w)};
            ++refinements;
            step(a, *mid, free, depth + 1, offset, out, refinements);
            step(*mid, b, false, depth + 1, offset, out, refinements);
            return;
        }
        if (ambiguous) {
            throw NumericError("branch tracking lost near parameter " + param_str(wrap_unit(b.t / 2 + offset)));
        }
        out.push_back({b.t / 2 + offset, chosen, b.w});
    }

    double clearance(const SpherePoint& p, const SpherePoint& a, const SpherePoint& b) const {
        double best = 2.0;
        for (const auto& g : guards_) {
            if (chordal_distance(g, a) < 1e-12 || chordal_distance(g, b) < 1e-12) continue;
            best = std::min(best, chordal_distance(g, p));
        }
        return best;
    }

    const NormalizedQuadratic& f_;
    std::vector<SpherePoint> guards_;
};

std::vector<Lifted> negated(std::vector<Lifted> lift) {
    for (auto& p : lift) p.z = p.z.negated();
    return lift;
}

// Point at fraction s of the great-circle segment from a to b.
SpherePoint along(const SpherePoint& a, const SpherePoint& b, double s) {
    return from_sphere((1.0 - s) * stereographic(a) + s * stereographic(b));
}

// Follows the lift through `z` of the parent segment from `w` to the critical
// value `c`, and returns a lifted point very close to the critical point.
SpherePoint approach_critical(const NormalizedQuadratic& f, const SpherePoint& c, const SpherePoint& w,
                              SpherePoint z) {
    // Stop well above rounding level: geodesic points closer than that to c
    // collapse onto it.
    const double d = chordal_distance(c, w);
    for (double s = 0.7; s * d > 1e-9; s *= 0.7) {
        const auto roots = f.preimages(along(c, w, s));
        z = chordal_distance(z, roots.first) <= chordal_distance(z, roots.second) ? roots.first : roots.second;
    }
    return z;
}

// Turning direction at a critical point from the tangent directions of the
// incoming and outgoing lifts: positive for a left turn seen from outside.
double turn(const NormalizedQuadratic& f, const Lifted& before, const Lifted& at, const Lifted& after) {
    const SpherePoint z_in = approach_critical(f, at.w, before.w, before.z);
    const SpherePoint z_out = approach_critical(f, at.w, after.w, after.z);
    const Vec3 p = stereographic(at.z);
    const Vec3 d_in = p - stereographic(z_in);
    const Vec3 d_out = stereographic(z_out) - p;
    const double s = dot(cross(d_in, d_out), p);
    if (std::abs(s) <= 1e-9 * norm(d_in) * norm(d_out)) {
        throw NumericError("handedness undetermined at a critical point");
    }
    return s;
}

}  // namespace

DiscreteCurve pullback_curve(const DiscreteCurve& c, const NormalizedQuadratic& f, const Schedule& s_next,
                             int threads, LiftStats* stats) {
    if (c.samples.empty() || c.samples.front().parameter != 0) {
        throw StructuralError("parent curve lacks its parameter-0 sample");
    }
    if (chordal_distance(c.samples.front().position, SpherePoint(1.0)) > kTolerances.anchor) {
        throw NumericError("parent curve is not anchored at 1");
    }

    std::vector<Node> nodes;
    nodes.reserve(c.samples.size() + 1);
    for (const auto& s : c.samples) nodes.push_back({s.parameter, s.position});
    nodes.push_back({Param(1), c.samples.front().position});

    // Split the first pass at the child's marks; it ends at child parameter 1/2.
    std::vector<Arc> arcs;
    {
        std::size_t first = 0;
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            const bool boundary = i + 1 == nodes.size() || s_next.find(nodes[i].t / 2).has_value();
            if (boundary) {
                arcs.push_back({0, first, i});
                first = i;
            }
        }
    }

    std::vector<SpherePoint> guards;
    for (const auto& s : c.samples) {
        if (!s.mark || c.schedule.marks[*s.mark].kind != MarkKind::Postcritical) continue;
        const auto roots = f.preimages(s.position);
        guards.push_back(roots.first);
        guards.push_back(roots.second);
    }
    ArcLifter lifter(f, std::move(guards));
    std::vector<std::vector<Lifted>> lifts(arcs.size());
    std::vector<std::size_t> refinements(arcs.size(), 0);
    std::vector<std::exception_ptr> errors(arcs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < arcs.size(); k = next++) {
            try {
                lifts[k] = lifter.lift(nodes, arcs[k], refinements[k]);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const int n_threads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(arcs.size(), 1)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    // Stitch from the anchor, choosing between each arc lift and its negation.
    std::vector<Lifted> path;
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        std::vector<Lifted> a = std::move(lifts[k]);
        std::vector<Lifted> b = negated(a);
        if (path.empty()) {
            const SpherePoint one(1.0);
            path = chordal_distance(a.front().z, one) <= chordal_distance(b.front().z, one) ? std::move(a)
                                                                                             : std::move(b);
            if (chordal_distance(path.front().z, one) > kTolerances.anchor) {
                throw NumericError("lift does not start at 1");
            }
            continue;
        }
        const SpherePoint end = path.back().z;
        std::vector<Lifted>* pick = nullptr;
        if (a.front().z == b.front().z) {
            // Passing through a critical point: fork right at 0, left at infinity.
            const double s = turn(f, path[path.size() - 2], path.back(), a[1]);
            const bool left = s > 0;
            const bool want_left = end.is_infinity();
            pick = left == want_left ? &a : &b;
        } else {
            pick = chordal_distance(a.front().z, end) <= chordal_distance(b.front().z, end) ? &a : &b;
        }
        if (chordal_distance(pick->front().z, end) > kTolerances.stitch) {
            throw NumericError("branch tracking lost: arc lifts do not meet at parameter " +
                               param_str(wrap_unit(pick->front().t)));
        }
        path.insert(path.end(), pick->begin() + 1, pick->end());
    }
    // The first half must end at the other preimage of 1; the second half is
    // its image under the deck transformation z -> -z.
    if (chordal_distance(path.back().z, path.front().z.negated()) > kTolerances.stitch) {
        throw NumericError("branch tracking lost: the half lift does not end at -1");
    }
    path.pop_back();
    const std::size_t half = path.size();
    for (std::size_t k = 0; k < half; ++k) {
        path.push_back({path[k].t + Param(1, 2), path[k].z.negated(), path[k].w});
    }

    DiscreteCurve out;
    out.level = c.level + 1;
    out.schedule = s_next;
    out.samples.reserve(path.size());
    double worst = 0.0;
    for (const auto& p : path) {
        worst = std::max(worst, chordal_distance(f.eval(p.z), p.w));
        out.samples.push_back({p.t, p.z, s_next.find(p.t)});
    }
    if (worst > kTolerances.lift_fidelity) {
        throw NumericError("lifted curve does not map onto its parent (error " + std::to_string(worst) + ")");
    }
    out.validate();
    if (stats) {
        stats->max_fidelity_error = worst;
        stats->refinements = 0;
        for (auto r : refinements) stats->refinements += r;
    }
    return out;
}

std::vector<SpherePoint> relabel(const DiscreteCurve& c_next) { return c_next.postcritical_positions(); }

namespace {

double det(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(cross(a, b), c); }

bool in_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const double orient = det(a, b, c);
    return det(a, b, p) * orient >= 0 && det(b, c, p) * orient >= 0 && det(c, a, p) * orient >= 0;
}

// Triple products of unit vectors carry about 1e-16 of rounding noise.
constexpr double kDetNoise = 1e-15;
// Samples closer than this (chordal) are treated as coincident by pruning.
constexpr double kDuplicate = 1e-11;

bool strictly_in_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const double orient = det(a, b, c);
    if (std::abs(orient) <= kDetNoise) return false;
    const double sg = orient > 0 ? 1.0 : -1.0;
    return det(a, b, p) * sg > kDetNoise && det(b, c, p) * sg > kDetNoise && det(c, a, p) * sg > kDetNoise;
}

// Is the direction from x towards p strictly between the directions towards y and z?
bool in_wedge(const Vec3& x, const Vec3& y, const Vec3& z, const Vec3& p) {
    auto side = [&](const Vec3& from, const Vec3& to) { return dot(cross(from - x, to - x), x); };
    const double yz = side(y, z);
    if (std::abs(yz) <= kDetNoise) return false;
    const double sg = yz > 0 ? 1.0 : -1.0;
    return side(y, p) * sg > kDetNoise && side(p, z) * sg > kDetNoise;
}

// Buckets of unit-sphere points by coordinate cell, for triangle queries.
class SphereGrid {
public:
    SphereGrid(const std::vector<Vec3>& pos, double cell) : pos_(pos), cell_(cell) {
        for (std::size_t i = 0; i < pos.size(); ++i) cells_[key(cell_of(pos[i]))].push_back(i);
    }

    template <class Visit>
    bool any_in_box(const Vec3& lo, const Vec3& hi, Visit&& visit) const {
        const auto a = cell_of(lo), b = cell_of(hi);
        for (int x = a[0]; x <= b[0]; ++x) {
            for (int y = a[1]; y <= b[1]; ++y) {
                for (int z = a[2]; z <= b[2]; ++z) {
                    auto it = cells_.find(key({x, y, z}));
                    if (it == cells_.end()) continue;
                    for (std::size_t i : it->second) {
                        if (visit(i)) return true;
                    }
                }
            }
        }
        return false;
    }

private:
    std::array<int, 3> cell_of(const Vec3& p) const {
        return {static_cast<int>(std::floor((p[0] + 1.0) / cell_)), static_cast<int>(std::floor((p[1] + 1.0) / cell_)),
                static_cast<int>(std::floor((p[2] + 1.0) / cell_))};
    }
    static long long key(const std::array<int, 3>& c) { return (static_cast<long long>(c[0]) * 4096 + c[1]) * 4096 + c[2]; }

    const std::vector<Vec3>& pos_;
    double cell_;
    std::unordered_map<long long, std::vector<std::size_t>> cells_;
};

// Chordal distance from p to the shorter great-circle arc from a to c.
double clearance(const Vec3& p, const Vec3& a, const Vec3& c) {
    const double ends = std::min(norm(p - a), norm(p - c));
    Vec3 n = cross(a, c);
    const double len = norm(n);
    if (len < 1e-15) return ends;
    n = (1.0 / len) * n;
    const Vec3 proj = p - dot(p, n) * n;
    const double plen = norm(proj);
    if (plen < 1e-15) return ends;
    if (dot(cross(a, proj), n) < 0 || dot(cross(proj, c), n) < 0) return ends;
    return std::min(ends, norm(p - (1.0 / plen) * proj));
}

// Angle at p between the great circles towards a and b.
double corner_angle(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 ta = a - dot(a, p) * p;
    const Vec3 tb = b - dot(b, p) * p;
    return std::atan2(norm(cross(ta, tb)), dot(ta, tb));
}

double swept_area(const Vec3& a, const Vec3& b, const Vec3& c) { return 0.5 * norm(cross(b - a, c - a)); }

}  // namespace

DiscreteCurve prune(const DiscreteCurve& c, std::size_t budget, double tol) {
    std::size_t pinned = 0;
    for (const auto& s : c.samples) pinned += (s.mark || s.parameter == 0) ? 1 : 0;
    if (budget < pinned) {
        throw InvalidArgument("prune budget " + std::to_string(budget) + " is below the " + std::to_string(pinned) +
                              " samples that must be kept");
    }
    const std::size_t n = c.samples.size();
    if (n <= budget) return c;

    std::vector<Vec3> pos(n);
    std::vector<bool> keep(n);
    std::vector<std::size_t> guards;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = c.samples[i];
        pos[i] = stereographic(s.position);
        keep[i] = s.mark.has_value() || s.parameter == 0;
        if (s.mark && c.schedule.marks[*s.mark].kind == MarkKind::Postcritical) guards.push_back(i);
    }
    std::vector<std::size_t> prev(n), next(n);
    for (std::size_t i = 0; i < n; ++i) {
        prev[i] = (i + n - 1) % n;
        next[i] = (i + 1) % n;
    }
    std::vector<bool> alive(n, true);
    std::vector<double> area(n, 0.0);
    const SphereGrid grid(pos, 0.05);

    auto safe = [&](std::size_t i) {
        const Vec3& a = pos[prev[i]];
        const Vec3& b = pos[i];
        const Vec3& d = pos[next[i]];
        if (norm(d - a) >= kTolerances.prune_max_segment) return false;
        for (std::size_t g : guards) {
            if (g == prev[i] || g == next[i]) continue;
            if (in_triangle(pos[g], a, b, d) || clearance(pos[g], a, d) < tol) return false;
        }
        // A near-duplicate of a neighbour moves the curve by less than any
        // clearance we could resolve.
        if (std::min(norm(b - a), norm(b - d)) < kDuplicate) return true;
        // Keep the curve from folding into a spike at a marked point; the
        // fork choice at critical points is read from these angles.
        for (std::size_t j : {prev[i], next[i]}) {
            if (!c.samples[j].mark) continue;
            const std::size_t other = j == prev[i] ? prev[j] : next[j];
            const std::size_t fresh = j == prev[i] ? next[i] : prev[i];
            if (norm(pos[other] - pos[j]) < kDuplicate) continue;
            if (corner_angle(pos[j], pos[other], pos[fresh]) < kTolerances.prune_min_mark_angle) return false;
        }
        // The shortcut must not pass over another part of the curve, or the
        // curve would change its isotopy class (and its turns at marked points).
        Vec3 lo = a, hi = a;
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::min({a[k], b[k], d[k]});
            hi[k] = std::max({a[k], b[k], d[k]});
        }
        const std::array<std::size_t, 3> corners{prev[i], i, next[i]};
        return !grid.any_in_box(lo, hi, [&](std::size_t j) {
            if (!alive[j] || j == i || j == prev[i] || j == next[i]) return false;
            if (strictly_in_triangle(pos[j], a, b, d)) return true;
            // Where the curve touches itself at a corner, the other strand's
            // arms must stay out of the swept wedge.
            for (std::size_t k = 0; k < 3; ++k) {
                const Vec3& x = pos[corners[k]];
                if (norm(pos[j] - x) > 1e-12) continue;
                const Vec3& y = pos[corners[(k + 1) % 3]];
                const Vec3& z = pos[corners[(k + 2) % 3]];
                for (std::size_t arm : {prev[j], next[j]}) {
                    if (in_wedge(x, y, z, pos[arm])) return true;
                }
            }
            return false;
        });
    };

    std::set<std::pair<double, std::size_t>> queue;
    auto enqueue = [&](std::size_t i) {
        if (keep[i]) return;
        area[i] = swept_area(pos[prev[i]], pos[i], pos[next[i]]);
        queue.insert({area[i], i});
    };
    for (std::size_t i = 0; i < n; ++i) enqueue(i);

    // A refused sample may become removable once whatever blocked it is gone,
    // so refused samples get another pass while passes make progress.
    std::size_t count = n;
    std::vector<std::size_t> refused;
    for (bool progress = true; progress && count > budget;) {
        progress = false;
        while (count > budget && !queue.empty()) {
            auto [a, i] = *queue.begin();
            queue.erase(queue.begin());
            if (!safe(i)) {
                refused.push_back(i);
                continue;
            }
            alive[i] = false;
            progress = true;
            --count;
            const std::size_t p = prev[i], q = next[i];
            next[p] = q;
            prev[q] = p;
            for (std::size_t j : {p, q}) {
                if (keep[j]) continue;
                queue.erase({area[j], j});
                enqueue(j);
            }
        }
        for (std::size_t i : refused) {
            if (alive[i]) enqueue(i);
        }
        refused.clear();
    }

    DiscreteCurve out;
    out.level = c.level;
    out.schedule = c.schedule;
    out.samples.reserve(count);
    for (std::size_t i = 0; i < n; ++i) {
        if (alive[i]) out.samples.push_back(c.samples[i]);
    }
    return out;
}

const char* status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Converged: return "converged";
        case RunStatus::MaxIterations: return "max-iterations";
        case RunStatus::Diverged: return "diverged";
        case RunStatus::StructuralError: return "structural-error";
        case RunStatus::NumericError: return "numeric-error";
    }
    return "?";
}

int exit_code(RunStatus s) {
    switch (s) {
        case RunStatus::Converged: return 0;
        case RunStatus::StructuralError: return 2;
        default: return 3;
    }
}

namespace {

constexpr int kStallLimit = 20;

void run_loop(const MatingStructure& m, const IterateOptions& opts, RunReport& report) {
    const Schedule base = base_schedule(m);
    const Schedule lifted = pullback_schedule(base);
    DiscreteCurve curve = init_embedding(base, opts.samples_per_arc);
    if (opts.on_curve) opts.on_curve(curve);

    auto [u, v] = read_critical_values(curve);
    IterationRecord first;
    first.u = u;
    first.v = v;
    first.samples_before = first.samples_after = curve.samples.size();
    report.records.push_back(first);

    double best = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (int n = 1; n <= opts.max_iters; ++n) {
        const NormalizedQuadratic f = NormalizedQuadratic::from_critical_values(u, v);
        report.final_map = f;
        LiftStats stats;
        DiscreteCurve child = pullback_curve(curve, f, lifted, opts.threads, &stats);
        const std::vector<SpherePoint> before = curve.postcritical_positions();
        const std::size_t lifted_count = child.samples.size();
        child = prune(with_schedule(std::move(child), base), opts.budget);
        const std::vector<SpherePoint> after = relabel(child);

        IterationRecord rec;
        rec.n = n;
        std::tie(rec.u, rec.v) = read_critical_values(child);
        rec.samples_before = lifted_count;
        rec.samples_after = child.samples.size();
        for (std::size_t k = 0; k < after.size(); ++k) {
            rec.displacement = std::max(rec.displacement, chordal_distance(before[k], after[k]));
        }
        rec.increment = chordal_distance(u, rec.u) + chordal_distance(v, rec.v);
        rec.lift_error = stats.max_fidelity_error;
        report.records.push_back(rec);

        curve = std::move(child);
        if (opts.on_curve) opts.on_curve(curve);
        u = rec.u;
        v = rec.v;
        report.final_map = NormalizedQuadratic::from_critical_values(u, v);

        if (rec.increment < opts.tol && n >= opts.min_iters) {
            report.status = RunStatus::Converged;
            return;
        }
        if (rec.increment < best) {
            best = rec.increment;
            stall = 0;
        } else if (++stall >= kStallLimit) {
            report.status = RunStatus::Diverged;
            report.reason = "no decrease of the increment in " + std::to_string(kStallLimit) + " iterations";
            return;
        }
    }
    report.status = RunStatus::MaxIterations;
}

}  // namespace

RunReport iterate(const Angle& alpha, const Angle& beta, const IterateOptions& opts) {
    if (opts.max_iters < 1 || !(opts.tol > 0) || opts.samples_per_arc < 1 || opts.budget < 1 || opts.threads < 1) {
        throw InvalidArgument("iteration options must be positive");
    }
    RunReport report;
    report.alpha = alpha;
    report.beta = beta;
    report.options = opts;
    report.options.on_curve = nullptr;

    const MatingStructure m = analyze_mating(alpha, beta);
    report.postcritical_count = m.postcritical_count();
    report.orbifold_warning = m.mateable && m.orbifold_warning();
    if (!m.mateable) {
        report.status = RunStatus::StructuralError;
        report.reason = "conjugate limbs";
        return report;
    }
    if (!m.jordan) {
        report.status = RunStatus::StructuralError;
        report.reason = "not a Jordan curve: " + m.pinch;
        return report;
    }
    if (!m.fsr_valid) {
        report.status = RunStatus::StructuralError;
        report.reason = "no finite subdivision rule: " + m.fsr_witness;
        return report;
    }
    if (m.critical_values_identified()) {
        report.status = RunStatus::StructuralError;
        report.reason = "critical values identified";
        return report;
    }

    try {
        run_loop(m, opts, report);
    } catch (const StructuralError& e) {
        report.status = RunStatus::StructuralError;
        report.reason = e.what();
    } catch (const NumericError& e) {
        report.status = RunStatus::NumericError;
        report.reason = e.what();
    } catch (const InvalidArgument& e) {
        // Degenerate critical values along the way.
        report.status = RunStatus::NumericError;
        report.reason = e.what();
    }
    return report;
}

}  // namespace peq

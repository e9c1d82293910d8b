#include "peq/mating.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "peq/error.hpp"

namespace peq {

const char* side_name(Side s) { return s == Side::Black ? "black" : "red"; }

std::string to_string(const SideAngle& s) { return std::string(side_name(s.side)) + " " + s.angle.str(); }

const char* mark_kind_name(MarkKind k) {
    switch (k) {
        case MarkKind::Postcritical: return "postcritical";
        case MarkKind::CriticalPoint: return "critical";
        case MarkKind::Plumbing: return "plumbing";
    }
    return "?";
}

namespace {

constexpr std::size_t kMaxRayClassSize = 4096;

// A landing point in one of the two dynamic planes, named by its smallest angle.
struct Point {
    Side side;
    Angle rep;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

Side opposite(Side s) { return s == Side::Black ? Side::Red : Side::Black; }

// Parameters in ascending order with 0 placed last, matching p_1, ..., p_m numbering.
bool parameter_order(const Angle& a, const Angle& b) {
    if (a.is_zero() != b.is_zero()) return b.is_zero();
    return a < b;
}

std::vector<Angle> distinct_orbit(const Angle& a) {
    OrbitInfo info = orbit_info(a);
    info.orbit.pop_back();
    return info.orbit;
}

class Analyzer {
public:
    Analyzer(const Angle& alpha, const Angle& beta)
        : alpha_(alpha), beta_(beta), black_(alpha), red_(beta),
          black_orbit_(distinct_orbit(alpha)), red_orbit_(distinct_orbit(beta)) {
        for (const auto& a : black_orbit_) pc_points_.insert(point({Side::Black, a}));
        for (const auto& a : red_orbit_) pc_points_.insert(point({Side::Red, a}));
    }

    Point point(const SideAngle& s) {
        if (auto it = point_cache_.find(s); it != point_cache_.end()) return it->second;
        const LandingModel& model = s.side == Side::Black ? black_ : red_;
        std::vector<Angle> cls = model.landing_class(s.angle);
        Point p{s.side, cls.front()};
        for (const auto& a : cls) point_cache_.emplace(SideAngle{s.side, a}, p);
        angles_.emplace(p, std::move(cls));
        return p;
    }

    const std::vector<Angle>& angles(const Point& p) {
        point({p.side, p.rep});
        return angles_.at(p);
    }

    Point image(const Point& p) { return point({p.side, doubled(p.rep)}); }

    bool postcritical(const Point& p) const { return pc_points_.count(p) != 0; }

    int ray_class(const Point& start) {
        if (auto it = class_of_.find(start); it != class_of_.end()) return it->second;
        int id = static_cast<int>(classes_.size());
        std::vector<Point> members;
        std::deque<Point> queue{start};
        std::set<Point> seen{start};
        while (!queue.empty()) {
            Point p = queue.front();
            queue.pop_front();
            members.push_back(p);
            for (const Angle& a : angles(p)) {
                Point q = point({opposite(p.side), negated(a)});
                if (seen.insert(q).second) queue.push_back(q);
            }
            if (seen.size() > kMaxRayClassSize) {
                throw StructuralError("ray-equivalence class of " + std::string(side_name(start.side)) + " " +
                                      start.rep.str() + " is unexpectedly large");
            }
        }
        std::sort(members.begin(), members.end());
        for (const auto& p : members) class_of_[p] = id;
        classes_.push_back(std::move(members));
        return id;
    }

    const std::vector<Point>& members(int id) const { return classes_[static_cast<std::size_t>(id)]; }

    std::size_t postcritical_count(int id) const {
        const auto& m = members(id);
        return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [&](const Point& p) { return postcritical(p); }));
    }

    // Contains a postcritical point and eventually maps onto a ray graph
    // joining two or more postcritical points.
    bool essential(int id) {
        if (auto it = essential_.find(id); it != essential_.end()) return it->second;
        bool result = false;
        if (postcritical_count(id) > 0) {
            std::set<int> visited;
            int cur = id;
            while (visited.insert(cur).second) {
                if (postcritical_count(cur) >= 2) {
                    result = true;
                    break;
                }
                const auto& m = members(cur);
                auto pc = std::find_if(m.begin(), m.end(), [&](const Point& p) { return postcritical(p); });
                cur = ray_class(image(*pc));
            }
        }
        essential_[id] = result;
        return result;
    }

    // Membership in the Hubbard tree: postcritical, or a cut point whose
    // complementary arcs separate postcritical angles.
    bool on_tree(const Point& p) {
        if (postcritical(p)) return true;
        const auto& own = angles(p);
        if (own.size() < 2) return false;
        const auto& orbit = p.side == Side::Black ? black_orbit_ : red_orbit_;
        std::set<std::size_t> arcs;
        for (const auto& t : orbit) {
            for (std::size_t i = 0; i < own.size(); ++i) {
                if (in_open_arc(t, own[i], own[(i + 1) % own.size()])) {
                    arcs.insert(i);
                    break;
                }
            }
        }
        return arcs.size() >= 2;
    }

    std::string describe_point(const Point& p) {
        std::string out = std::string(side_name(p.side)) + "{";
        const auto& a = angles(p);
        for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + a[i].str();
        return out + "}";
    }

    std::string describe_class(int id) {
        std::string out;
        for (const auto& p : members(id)) out += (out.empty() ? "" : " ~ ") + describe_point(p);
        return out;
    }

    const Angle& alpha() const { return alpha_; }
    const Angle& beta() const { return beta_; }
    const std::vector<Angle>& black_orbit() const { return black_orbit_; }
    const std::vector<Angle>& red_orbit() const { return red_orbit_; }

private:
    Angle alpha_;
    Angle beta_;
    LandingModel black_;
    LandingModel red_;
    std::vector<Angle> black_orbit_;
    std::vector<Angle> red_orbit_;
    std::set<Point> pc_points_;
    std::map<SideAngle, Point> point_cache_;
    std::map<Point, std::vector<Angle>> angles_;
    std::map<Point, int> class_of_;
    std::vector<std::vector<Point>> classes_;
    std::map<int, bool> essential_;
};

void build_classes(Analyzer& an, MatingStructure& m) {
    // Group tracked SideAngles by the point of the essential mating they land on:
    // a collapsed ray class, or the plain landing point otherwise.
    struct Group {
        std::string key;
        EssentialClass cls;
    };
    std::vector<Group> groups;
    auto add = [&](const SideAngle& s) {
        Point p = an.point(s);
        int rc = an.ray_class(p);
        bool collapsed = an.essential(rc);
        std::string key = collapsed ? "E" + std::to_string(rc)
                                    : std::string("P") + side_name(p.side) + p.rep.str();
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.key == key; });
        if (it == groups.end()) {
            Group g{key, {}};
            g.cls.collapsed = collapsed;
            g.cls.ray_graph = collapsed ? an.describe_class(rc) : an.describe_point(p);
            if (collapsed) {
                for (const auto& q : an.members(rc)) {
                    for (const auto& a : an.angles(q)) g.cls.curve_parameters.push_back(SideAngle{q.side, a}.curve_parameter());
                }
            }
            groups.push_back(std::move(g));
            it = groups.end() - 1;
        }
        it->cls.members.push_back(s);
        if (!collapsed) it->cls.curve_parameters.push_back(s.curve_parameter());
    };
    for (const auto& a : an.black_orbit()) add({Side::Black, a});
    for (const auto& a : an.red_orbit()) add({Side::Red, a});

    for (auto& g : groups) {
        auto& params = g.cls.curve_parameters;
        std::sort(params.begin(), params.end(), parameter_order);
        params.erase(std::unique(params.begin(), params.end()), params.end());
        std::sort(g.cls.members.begin(), g.cls.members.end());
    }
    std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
        return parameter_order(a.cls.curve_parameters.front(), b.cls.curve_parameters.front());
    });

    auto index_of = [&](const SideAngle& s) {
        for (std::size_t i = 0; i < groups.size(); ++i) {
            const auto& mem = groups[i].cls.members;
            if (std::find(mem.begin(), mem.end(), s) != mem.end()) return i;
        }
        throw StructuralError("orbit angle " + to_string(s) + " is not tracked");
    };
    for (auto& g : groups) {
        const SideAngle& s = g.cls.members.front();
        g.cls.image = index_of({s.side, doubled(s.angle)});
    }
    m.black_critical_value = index_of({Side::Black, an.alpha()});
    m.red_critical_value = index_of({Side::Red, an.beta()});
    for (auto& g : groups) m.classes.push_back(std::move(g.cls));
}

void check_jordan(MatingStructure& m) {
    m.jordan = true;
    for (const auto& c : m.classes) {
        if (c.curve_parameters.size() > 1) {
            m.jordan = false;
            std::string params;
            for (const auto& t : c.curve_parameters) params += (params.empty() ? "" : ",") + t.str();
            m.pinch = "equator pinched at parameters {" + params + "} by " + c.ray_graph;
            return;
        }
    }
}

void check_fsr(Analyzer& an, MatingStructure& m) {
    std::set<int> candidates;
    std::set<int> essential_ids;
    auto consider = [&](const Point& p) {
        int id = an.ray_class(p);
        candidates.insert(id);
        if (an.essential(id)) essential_ids.insert(id);
    };
    for (const auto& a : an.black_orbit()) consider(an.point({Side::Black, a}));
    for (const auto& a : an.red_orbit()) consider(an.point({Side::Red, a}));
    consider(an.point({Side::Black, halves(an.alpha()).first}));
    consider(an.point({Side::Red, halves(an.beta()).first}));
    // Components of the preimage of each essential class.
    for (int e : std::vector<int>(essential_ids.begin(), essential_ids.end())) {
        for (const auto& p : std::vector<Point>(an.members(e))) {
            for (const auto& a : std::vector<Angle>(an.angles(p))) {
                auto [h1, h2] = halves(a);
                candidates.insert(an.ray_class(an.point({p.side, h1})));
                candidates.insert(an.ray_class(an.point({p.side, h2})));
            }
        }
    }

    m.fsr_valid = true;
    for (int k : candidates) {
        if (an.essential(k)) continue;
        std::vector<Point> tree;
        for (const auto& p : std::vector<Point>(an.members(k))) {
            if (an.on_tree(p)) tree.push_back(p);
        }
        for (std::size_t i = 0; i < tree.size(); ++i) {
            for (std::size_t j = i + 1; j < tree.size(); ++j) {
                Point hx = an.image(tree[i]);
                Point hy = an.image(tree[j]);
                int cx = an.ray_class(hx);
                bool related = hx == hy || (cx == an.ray_class(hy) && an.essential(cx));
                if (related) {
                    m.fsr_valid = false;
                    m.fsr_witness = an.describe_point(tree[i]) + " and " + an.describe_point(tree[j]) +
                                    " are ray-equivalent but not essentially identified, while their images are";
                    return;
                }
            }
        }
    }
}

}  // namespace

MatingStructure analyze_mating(const Angle& alpha, const Angle& beta) {
    MatingStructure m;
    m.alpha = alpha;
    m.beta = beta;
    m.mateable = mateable(alpha, beta);
    m.black_limb = limb_of(alpha);
    m.red_limb = limb_of(beta);
    if (!m.mateable) return m;

    Analyzer an(alpha, beta);
    build_classes(an, m);
    check_jordan(m);
    check_fsr(an, m);
    return m;
}

std::vector<EssentialClass> essential_classes(const Angle& alpha, const Angle& beta) {
    return analyze_mating(alpha, beta).classes;
}

bool is_jordan(const Angle& alpha, const Angle& beta) { return analyze_mating(alpha, beta).jordan; }

bool fsr_valid(const Angle& alpha, const Angle& beta) { return analyze_mating(alpha, beta).fsr_valid; }

std::optional<std::size_t> Schedule::find(const Param& t) const {
    auto it = std::lower_bound(marks.begin(), marks.end(), t,
                               [](const Mark& m, const Param& x) { return m.parameter < x; });
    if (it == marks.end() || it->parameter != t) return std::nullopt;
    return static_cast<std::size_t>(it - marks.begin());
}

std::vector<Param> Schedule::parameters() const {
    std::vector<Param> out;
    out.reserve(marks.size());
    for (const auto& m : marks) out.push_back(m.parameter);
    return out;
}

Schedule base_schedule(const MatingStructure& m) {
    if (!m.mateable) {
        throw StructuralError("conjugate limbs: " + m.alpha.str() + " and " + m.beta.str() + " are not mateable");
    }
    if (!m.jordan) throw StructuralError("pseudo-equator is not a Jordan curve: " + m.pinch);
    if (m.critical_values_identified()) throw StructuralError("critical values identified");

    Schedule s;
    s.level = 0;
    s.black_critical_value = m.alpha;
    s.red_critical_value = negated(m.beta);
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
        const Angle& t = m.classes[i].curve_parameters.front();
        s.postcritical.push_back(t);
        s.marks.push_back(Mark{to_param(t), MarkKind::Postcritical, static_cast<int>(i) + 1, Side::Black, i});
    }
    std::sort(s.marks.begin(), s.marks.end(), [](const Mark& a, const Mark& b) { return a.parameter < b.parameter; });
    return s;
}

Schedule base_schedule(const Angle& alpha, const Angle& beta) { return base_schedule(analyze_mating(alpha, beta)); }

Schedule pullback_schedule(const Schedule& s) {
    Schedule next;
    next.level = s.level + 1;
    next.black_critical_value = s.black_critical_value;
    next.red_critical_value = s.red_critical_value;
    next.postcritical = s.postcritical;

    std::map<Param, Mark> by_param;
    for (const auto& m : s.marks) {
        auto [h1, h2] = halve_param(m.parameter);
        by_param.emplace(h1, Mark{h1, MarkKind::Plumbing, 0, Side::Black, std::nullopt});
        by_param.emplace(h2, Mark{h2, MarkKind::Plumbing, 0, Side::Black, std::nullopt});
    }
    for (std::size_t i = 0; i < s.postcritical.size(); ++i) {
        auto it = by_param.find(to_param(s.postcritical[i]));
        if (it == by_param.end()) throw StructuralError("postcritical parameter lost in pullback");
        it->second.kind = MarkKind::Postcritical;
        it->second.id = static_cast<int>(i) + 1;
        it->second.class_index = i;
    }
    auto mark_critical = [&](const Angle& value, Side color) {
        auto [h1, h2] = halve_param(to_param(value));
        for (const Param& h : {h1, h2}) {
            auto it = by_param.find(h);
            if (it == by_param.end()) throw StructuralError("critical point parameter lost in pullback");
            if (it->second.kind != MarkKind::Plumbing) {
                throw StructuralError("critical point parameter " + param_str(h) + " coincides with a postcritical mark");
            }
            it->second.kind = MarkKind::CriticalPoint;
            it->second.color = color;
        }
    };
    mark_critical(s.black_critical_value, Side::Black);
    mark_critical(s.red_critical_value, Side::Red);

    next.marks.reserve(by_param.size());
    for (auto& [_, m] : by_param) next.marks.push_back(std::move(m));
    return next;
}

}  // namespace peq

#include "peq/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace peq {

namespace {

constexpr double kSize = 480.0;
constexpr double kRadius = 200.0;
constexpr double kPieceLength = 0.05;  // chordal length of the drawn sub-segments

Vec3 normalized(const Vec3& v) { return (1.0 / norm(v)) * v; }

View make_view(std::string name, const Vec3& toward) {
    const Vec3 t = normalized(toward);
    const Vec3 x{1.0, 0.0, 0.0};
    const Vec3 right = normalized(x - dot(x, t) * t);
    return View{std::move(name), right, cross(t, right), t};
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    // Avoid "-0.000" so that output does not depend on the sign of rounding noise.
    if (std::string(buf) == "-0.000") return "0.000";
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Projected {
    double x, y, depth;
};

Projected project(const Vec3& p, const View& v) {
    return {kSize / 2 + kRadius * dot(p, v.right), kSize / 2 - kRadius * dot(p, v.up), dot(p, v.toward)};
}

// Points along the great circle from a to b, excluding a, including b.
std::vector<Vec3> great_arc(const Vec3& a, const Vec3& b) {
    const double len = norm(b - a);
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / kPieceLength)));
    std::vector<Vec3> out;
    const double omega = std::acos(std::clamp(dot(a, b), -1.0, 1.0));
    for (int k = 1; k <= pieces; ++k) {
        const double s = static_cast<double>(k) / pieces;
        if (omega < 1e-9 || std::abs(std::sin(omega)) < 1e-12) {
            out.push_back(normalized(a + s * (b - a)));
        } else {
            const double wa = std::sin((1 - s) * omega) / std::sin(omega);
            const double wb = std::sin(s * omega) / std::sin(omega);
            out.push_back(wa * a + wb * b);
        }
    }
    return out;
}

std::string mark_label(const Mark& m) {
    if (m.kind == MarkKind::Postcritical) return "p" + std::to_string(m.id);
    return m.color == Side::Black ? "c" : "c'";
}

}  // namespace

std::vector<View> default_views() {
    return {
        make_view("poles-front", {0.0, 0.0, 1.0}),
        make_view("equator-front", {0.0, -1.0, 0.0}),
        make_view("oblique", {0.3, -0.8, 0.5}),
    };
}

std::string render_sphere(const DiscreteCurve& c, const View& view, const std::string& title) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(kSize) << "\" height=\""
        << fmt(kSize) << "\" viewBox=\"0 0 " << fmt(kSize) << " " << fmt(kSize) << "\">\n";
    out << "<title>" << escape(title.empty() ? "level " + std::to_string(c.level) + ", " + view.name : title)
        << "</title>\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<circle cx=\"" << fmt(kSize / 2) << "\" cy=\"" << fmt(kSize / 2) << "\" r=\"" << fmt(kRadius)
        << "\" fill=\"#eef2f7\" stroke=\"#667\" stroke-width=\"1\"/>\n";

    // Split the closed polyline into runs that stay on one hemisphere.
    std::vector<Vec3> pts;
    for (const auto& s : c.samples) pts.push_back(stereographic(s.position));
    std::vector<Vec3> dense;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec3& a = pts[i];
        const Vec3& b = pts[(i + 1) % pts.size()];
        if (dense.empty()) dense.push_back(a);
        for (const auto& p : great_arc(a, b)) dense.push_back(p);
    }
    std::vector<std::pair<bool, std::vector<Projected>>> runs;
    for (std::size_t i = 0; i + 1 < dense.size(); ++i) {
        const Projected a = project(dense[i], view);
        const Projected b = project(dense[i + 1], view);
        const bool front = a.depth + b.depth >= 0.0;
        if (runs.empty() || runs.back().first != front) runs.push_back({front, {a}});
        runs.back().second.push_back(b);
    }
    for (bool front : {false, true}) {
        for (const auto& [f, run] : runs) {
            if (f != front) continue;
            out << "<path d=\"M " << fmt(run[0].x) << " " << fmt(run[0].y);
            for (std::size_t k = 1; k < run.size(); ++k) out << " L " << fmt(run[k].x) << " " << fmt(run[k].y);
            out << "\" fill=\"none\" stroke=\"#1f3b73\" stroke-width=\"1.5\"" << (front ? "" : " stroke-opacity=\"0.3\"")
                << "/>\n";
        }
    }

    for (const auto& s : c.samples) {
        if (!s.mark) continue;
        const Mark& m = c.schedule.marks[*s.mark];
        if (m.kind == MarkKind::Plumbing) continue;
        const Projected p = project(stereographic(s.position), view);
        const char* fill = m.kind == MarkKind::Postcritical ? "#c0392b" : (m.color == Side::Black ? "#000" : "#d35400");
        const std::string opacity = p.depth >= 0.0 ? "" : " fill-opacity=\"0.4\"";
        out << "<circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y) << "\" r=\"4\" fill=\"" << fill << "\"" << opacity
            << "/>\n";
        out << "<text x=\"" << fmt(p.x + 6) << "\" y=\"" << fmt(p.y - 6) << "\" font-family=\"sans-serif\" font-size=\"12\""
            << opacity << ">" << escape(mark_label(m)) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace peq

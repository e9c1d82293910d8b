#include "peq/dump.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "peq/error.hpp"

namespace peq {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* color_name(Side s) { return s == Side::Black ? "black" : "red"; }

struct Line {
    std::size_t number = 0;
    std::vector<std::string> fields;
};

class Reader {
public:
    explicit Reader(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        std::size_t n = 0;
        while (std::getline(in, raw)) {
            ++n;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            if (n == 1) {
                if (raw != "# curve-dump v1") throw ParseError(1, "missing '# curve-dump v1' header");
                continue;
            }
            std::istringstream ls(raw);
            Line line{n, {}};
            for (std::string f; ls >> f;) line.fields.push_back(f);
            if (line.fields.empty() || line.fields[0][0] == '#') continue;
            lines_.push_back(std::move(line));
        }
        if (n == 0) throw ParseError(0, "empty curve dump");
        last_ = n;
    }

    bool at(const std::string& keyword) const {
        return pos_ < lines_.size() && lines_[pos_].fields[0] == keyword;
    }

    const Line& expect(const std::string& keyword, std::size_t min_fields, std::size_t max_fields) {
        if (pos_ >= lines_.size()) throw ParseError(last_, "unexpected end of dump, wanted '" + keyword + "'");
        const Line& l = lines_[pos_];
        if (l.fields[0] != keyword) {
            throw ParseError(l.number, "expected '" + keyword + "', found '" + l.fields[0] + "'");
        }
        if (l.fields.size() < min_fields || l.fields.size() > max_fields) {
            throw ParseError(l.number, "wrong number of fields for '" + keyword + "'");
        }
        ++pos_;
        return l;
    }

    void finish() const {
        if (pos_ < lines_.size()) throw ParseError(lines_[pos_].number, "trailing content after 'end'");
    }

private:
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    std::size_t last_ = 0;
};

[[noreturn]] void bad_field(const Line& l, const std::string& field, const std::string& value) {
    throw ParseError(l.number, "bad " + field + " field '" + value + "'");
}

double parse_double(const Line& l, std::size_t i, const std::string& field) {
    const std::string& s = l.fields[i];
    char* end = nullptr;
    errno = 0;
    double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x)) bad_field(l, field, s);
    return x;
}

std::size_t parse_count(const Line& l, std::size_t i, const std::string& field) {
    const std::string& s = l.fields[i];
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9) bad_field(l, field, s);
    return std::stoul(s);
}

int parse_int(const Line& l, std::size_t i, const std::string& field) {
    const std::string& s = l.fields[i];
    std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos || s.size() > 9) {
        bad_field(l, field, s);
    }
    return std::stoi(s);
}

Param parse_parameter(const Line& l, std::size_t i) {
    try {
        return parse_param(l.fields[i]);
    } catch (const InvalidArgument&) {
        bad_field(l, "parameter", l.fields[i]);
    }
}

Angle parse_angle(const Line& l, std::size_t i, const std::string& field) {
    try {
        return Angle::parse(l.fields[i]);
    } catch (const Error&) {
        bad_field(l, field, l.fields[i]);
    }
}

// Reads a point starting at field i; returns the index after it.
std::size_t parse_point(const Line& l, std::size_t i, const std::string& field, SpherePoint& out) {
    if (i >= l.fields.size()) throw ParseError(l.number, "missing " + field + " field");
    if (l.fields[i] == "inf") {
        out = SpherePoint::infinity();
        return i + 1;
    }
    if (i + 1 >= l.fields.size()) throw ParseError(l.number, "missing imaginary part of " + field);
    out = SpherePoint(Complex(parse_double(l, i, field), parse_double(l, i + 1, field)));
    return i + 2;
}

MarkKind parse_kind(const Line& l, std::size_t i) {
    const std::string& s = l.fields[i];
    for (MarkKind k : {MarkKind::Postcritical, MarkKind::CriticalPoint, MarkKind::Plumbing}) {
        if (s == mark_kind_name(k)) return k;
    }
    bad_field(l, "kind", s);
}

Side parse_color(const Line& l, std::size_t i) {
    const std::string& s = l.fields[i];
    if (s == "black") return Side::Black;
    if (s == "red") return Side::Red;
    bad_field(l, "color", s);
}

}  // namespace

std::string dump_curve(const CurveDump& d) {
    const DiscreteCurve& c = d.curve;
    std::ostringstream out;
    out << "# curve-dump v1\n";
    out << "run " << (d.run_id.empty() ? "-" : d.run_id) << "\n";
    out << "level " << c.level << "\n";
    if (d.map) out << "map " << to_string(d.map->first) << " " << to_string(d.map->second) << "\n";
    out << "critical-values " << c.schedule.black_critical_value.str() << " " << c.schedule.red_critical_value.str()
        << "\n";
    out << "postcritical " << c.schedule.postcritical.size();
    for (const auto& a : c.schedule.postcritical) out << " " << a.str();
    out << "\n";
    out << "schedule " << c.schedule.level << " " << c.schedule.marks.size() << "\n";
    for (const auto& m : c.schedule.marks) {
        out << "mark " << param_str(m.parameter) << " " << mark_kind_name(m.kind) << " " << m.id << " "
            << color_name(m.color) << " " << (m.class_index ? std::to_string(*m.class_index) : "-") << "\n";
    }
    out << "samples " << c.samples.size() << "\n";
    for (const auto& s : c.samples) {
        out << "sample " << param_str(s.parameter) << " ";
        if (s.position.is_infinity()) {
            out << "inf";
        } else {
            out << num(s.position.value().real()) << " " << num(s.position.value().imag());
        }
        out << "\n";
    }
    out << "end\n";
    return out.str();
}

CurveDump load_curve(const std::string& text) {
    Reader in(text);
    CurveDump d;
    const Line& run = in.expect("run", 2, 2);
    d.run_id = run.fields[1] == "-" ? "" : run.fields[1];
    const Line& level = in.expect("level", 2, 2);
    d.curve.level = parse_int(level, 1, "level");
    if (in.at("map")) {
        const Line& l = in.expect("map", 3, 5);
        SpherePoint u, v;
        std::size_t next = parse_point(l, 1, "u", u);
        next = parse_point(l, next, "v", v);
        if (next != l.fields.size()) throw ParseError(l.number, "trailing fields on 'map'");
        d.map = std::make_pair(u, v);
    }
    Schedule& s = d.curve.schedule;
    const Line& cv = in.expect("critical-values", 3, 3);
    s.black_critical_value = parse_angle(cv, 1, "black critical value");
    s.red_critical_value = parse_angle(cv, 2, "red critical value");
    const Line& pc = in.expect("postcritical", 2, 2 + 4096);
    const std::size_t npc = parse_count(pc, 1, "postcritical count");
    if (pc.fields.size() != 2 + npc) throw ParseError(pc.number, "postcritical count does not match its list");
    for (std::size_t i = 0; i < npc; ++i) s.postcritical.push_back(parse_angle(pc, 2 + i, "postcritical"));

    const Line& sch = in.expect("schedule", 3, 3);
    s.level = parse_int(sch, 1, "schedule level");
    const std::size_t nmarks = parse_count(sch, 2, "mark count");
    for (std::size_t i = 0; i < nmarks; ++i) {
        const Line& l = in.expect("mark", 6, 6);
        Mark m;
        m.parameter = parse_parameter(l, 1);
        m.kind = parse_kind(l, 2);
        m.id = parse_int(l, 3, "id");
        m.color = parse_color(l, 4);
        if (l.fields[5] != "-") m.class_index = parse_count(l, 5, "class");
        if (!s.marks.empty() && !(s.marks.back().parameter < m.parameter)) {
            throw ParseError(l.number, "mark parameters are not increasing");
        }
        s.marks.push_back(m);
    }

    const Line& sl = in.expect("samples", 2, 2);
    const std::size_t nsamples = parse_count(sl, 1, "sample count");
    std::size_t next_mark = 0;
    for (std::size_t i = 0; i < nsamples; ++i) {
        const Line& l = in.expect("sample", 3, 4);
        CurveSample smp;
        smp.parameter = parse_parameter(l, 1);
        if (parse_point(l, 2, "position", smp.position) != l.fields.size()) {
            throw ParseError(l.number, "trailing fields on 'sample'");
        }
        if (!d.curve.samples.empty() && !(d.curve.samples.back().parameter < smp.parameter)) {
            throw ParseError(l.number, "sample parameters are not increasing");
        }
        while (next_mark < s.marks.size() && s.marks[next_mark].parameter < smp.parameter) ++next_mark;
        if (next_mark < s.marks.size() && s.marks[next_mark].parameter == smp.parameter) smp.mark = next_mark;
        d.curve.samples.push_back(std::move(smp));
    }
    in.expect("end", 1, 1);
    in.finish();
    try {
        d.curve.validate();
    } catch (const StructuralError& e) {
        throw ParseError(0, std::string("inconsistent curve: ") + e.what());
    }
    return d;
}

}  // namespace peq

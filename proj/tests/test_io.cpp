#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "peq/cli.hpp"
#include "peq/dump.hpp"
#include "peq/error.hpp"
#include "peq/pullback.hpp"
#include "peq/render.hpp"

using peq::Angle;
using peq::Complex;
using peq::DiscreteCurve;
using peq::SpherePoint;

namespace fs = std::filesystem;

namespace {

DiscreteCurve lifted(const char* a, const char* b, int spa = 16) {
    const auto s0 = peq::base_schedule(Angle::parse(a), Angle::parse(b));
    DiscreteCurve c0 = peq::init_embedding(s0, spa);
    const auto [u, v] = peq::read_critical_values(c0);
    return peq::pullback_curve(c0, peq::NormalizedQuadratic::from_critical_values(u, v),
                               peq::pullback_schedule(s0));
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = peq::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::pair<double, double>> path_points(const std::string& svg) {
    std::vector<std::pair<double, double>> pts;
    static const std::regex path(R"re(<path d="([^"]*)")re");
    static const std::regex pair(R"re([ML] (-?[0-9.]+) (-?[0-9.]+))re");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), path); it != std::sregex_iterator(); ++it) {
        const std::string d = (*it)[1];
        for (auto jt = std::sregex_iterator(d.begin(), d.end(), pair); jt != std::sregex_iterator(); ++jt) {
            pts.emplace_back(std::stod((*jt)[1]), std::stod((*jt)[2]));
        }
    }
    return pts;
}

peq::View view_named(const std::string& name) {
    for (const auto& v : peq::default_views()) {
        if (v.name == name) return v;
    }
    FAIL("no view " << name);
    return {};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Replaces the first line starting with `key` by `line`.
std::string with_line(std::string text, const std::string& key, const std::string& line) {
    const auto at = text.find("\n" + key) + 1;
    const auto end = text.find('\n', at);
    return text.replace(at, end - at, line);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("peq-test-" + tag + "-" + std::to_string(std::rand()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("curve dumps reload to the identical curve") {
    for (auto [a, b] : {std::pair{"1/4", "1/4"}, {"1/4", "1/8"}, {"1/6", "1/8"}}) {
        CAPTURE(std::string(a) + " " + b);
        peq::CurveDump d{"0123456789abcdef", lifted(a, b), std::nullopt};
        d.map = {{Complex(0.25, -1.0 / 3.0), SpherePoint::infinity()}};
        const std::string text = peq::dump_curve(d);
        const peq::CurveDump back = peq::load_curve(text);
        CHECK(back.run_id == d.run_id);
        CHECK(back.curve.level == d.curve.level);
        CHECK(back.curve.schedule.marks == d.curve.schedule.marks);
        CHECK(back.curve.schedule.postcritical == d.curve.schedule.postcritical);
        REQUIRE(back.map.has_value());
        CHECK(back.map->first == d.map->first);
        CHECK(back.map->second.is_infinity());
        REQUIRE(back.curve.samples.size() == d.curve.samples.size());
        for (std::size_t i = 0; i < d.curve.samples.size(); ++i) {
            CHECK(back.curve.samples[i].parameter == d.curve.samples[i].parameter);
            CHECK(back.curve.samples[i].position == d.curve.samples[i].position);
            CHECK(back.curve.samples[i].mark == d.curve.samples[i].mark);
        }
        CHECK(peq::dump_curve(back) == text);
    }
    peq::CurveDump bare{"", peq::init_embedding(peq::base_schedule(Angle::parse("1/4"), Angle::parse("1/8")), 4),
                        std::nullopt};
    const auto back = peq::load_curve(peq::dump_curve(bare));
    CHECK(back.run_id.empty());
    CHECK_FALSE(back.map.has_value());
}

TEST_CASE("malformed dumps name the line and the field") {
    const std::string good = peq::dump_curve({"r", lifted("1/4", "1/8", 4), std::nullopt});

    auto error_of = [](const std::string& text) -> std::pair<std::size_t, std::string> {
        try {
            peq::load_curve(text);
        } catch (const peq::ParseError& e) {
            return {e.line(), e.what()};
        }
        return {9999, "no error"};
    };

    const auto [empty_line, empty_msg] = error_of("");
    CHECK(empty_line == 0);
    CHECK(empty_msg.find("empty") != std::string::npos);

    CHECK(error_of("level 0\n").second.find("header") != std::string::npos);

    const std::string bad_kind = with_line(good, "mark 1/8 ", "mark 1/8 corner 0 black -");
    const auto [kind_line, kind_msg] = error_of(bad_kind);
    CHECK(kind_line > 1);
    CHECK(kind_msg.find("kind") != std::string::npos);
    CHECK(kind_msg.find("corner") != std::string::npos);

    CHECK(error_of(with_line(good, "level", "level x")).second.find("level") != std::string::npos);
    CHECK(error_of(with_line(good, "samples", "samples 3")).first > 0);
    CHECK(error_of(good.substr(0, good.rfind("end"))).first > 0);

    CHECK(error_of(with_line(good, "sample 0 ", "sample 1/2 1 0")).second.find("increasing") != std::string::npos);

    // Well-formed lines that describe a broken curve.
    const std::string unanchored = with_line(good, "sample 0 ", "sample 1/1000000 1 0");
    CHECK(error_of(unanchored).second.find("inconsistent") != std::string::npos);
}

TEST_CASE("rendering is deterministic and projects as expected") {
    const auto c0 = peq::init_embedding(peq::base_schedule(Angle::parse("1/4"), Angle::parse("1/8")), 32);
    for (const auto& v : peq::default_views()) {
        const std::string svg = peq::render_sphere(c0, v, "t");
        CHECK(svg == peq::render_sphere(c0, v, "t"));
        CHECK(svg.rfind("<?xml", 0) == 0);
        CHECK(svg.find("version=\"1.1\"") != std::string::npos);
        CHECK(svg.find("</svg>") != std::string::npos);
    }

    // The level-0 curve is the equator: the rim seen from the pole, a
    // horizontal diameter seen from the side.
    const auto rim = path_points(peq::render_sphere(c0, view_named("poles-front")));
    REQUIRE(!rim.empty());
    for (auto [x, y] : rim) CHECK(std::hypot(x - 240.0, y - 240.0) == doctest::Approx(200.0).epsilon(1e-4));
    const auto side = path_points(peq::render_sphere(c0, view_named("equator-front")));
    REQUIRE(!side.empty());
    for (auto [x, y] : side) CHECK(y == doctest::Approx(240.0).epsilon(1e-5));

    // The first lift of the self-mating of 1/4 runs through both poles, which
    // sit at the top and bottom of the equator-front view.
    const auto pts = path_points(peq::render_sphere(lifted("1/4", "1/4"), view_named("equator-front")));
    auto hits = [&](double x, double y) {
        for (auto [px, py] : pts) {
            if (std::hypot(px - x, py - y) < 0.01) return true;
        }
        return false;
    };
    CHECK(hits(240.0, 40.0));
    CHECK(hits(240.0, 440.0));
    CHECK(hits(440.0, 240.0));
    CHECK(hits(40.0, 240.0));
}

TEST_CASE("run reports are deterministic") {
    peq::IterateOptions o;
    o.max_iters = 3;
    o.samples_per_arc = 16;
    const auto a = peq::iterate(Angle::parse("1/4"), Angle::parse("1/8"), o);
    const auto b = peq::iterate(Angle::parse("1/4"), Angle::parse("1/8"), o);
    const std::string text = peq::format_report(a, "id");
    CHECK(text == peq::format_report(b, "id"));
    CHECK(text.rfind("# run-report v1\n", 0) == 0);
    CHECK(text.find("status max-iterations\n") != std::string::npos);
    CHECK(text.find("records 4\n") != std::string::npos);
    CHECK(text.substr(text.size() - 4) == "end\n");
}

TEST_CASE("run ids depend on the configuration but not on threads") {
    peq::RunConfig c{"1/4", "1/8", {}, "", false, 0};
    const std::string id = peq::run_id(c);
    CHECK(id.size() == 16);
    peq::RunConfig threaded = c;
    threaded.options.threads = 4;
    CHECK(peq::run_id(threaded) == id);
    peq::RunConfig other = c;
    other.options.tol = 1e-8;
    CHECK(peq::run_id(other) != id);
}

TEST_CASE("command line exit codes") {
    auto ok = cli({"check", "1/4", "1/8"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("postcritical 5") != std::string::npos);

    auto pinched = cli({"check", "1/6", "13/14"});
    CHECK(pinched.code == 2);
    CHECK(pinched.out.find("jordan no") != std::string::npos);
    CHECK(pinched.out.find("pinched") != std::string::npos);

    CHECK(cli({"check", "1/3", "1/4"}).code == peq::kExitUsage);
    CHECK(cli({"check", "1/4"}).code == peq::kExitUsage);
    CHECK(cli({"check", "x/4", "1/8"}).code == peq::kExitUsage);
    CHECK(cli({"frobnicate"}).code == peq::kExitUsage);

    auto conj = cli({"mate", "1/4", "3/4"});
    CHECK(conj.code == 2);
    CHECK(conj.out.find("conjugate limbs") != std::string::npos);

    auto self = cli({"mate", "1/4", "1/4"});
    CHECK(self.code == 0);
    CHECK(self.out.find("status converged") != std::string::npos);
    CHECK(self.out.find("u 0 1\n") != std::string::npos);
    CHECK(self.out.find("v 0 -1\n") != std::string::npos);

    auto sched = cli({"schedule", "1/4", "1/8", "--level", "1"});
    CHECK(sched.code == 0);
    CHECK(sched.out.find("7/16 critical") != std::string::npos);
}

TEST_CASE("mate writes dumps, pictures and a report under the run id") {
    TempDir dir("mate");
    auto r = cli({"mate", "1/4", "1/8", "--iters", "2", "--samples", "8", "--dump", dir.path.string(), "--render"});
    CHECK(r.code == 3);
    peq::RunConfig config{"1/4", "1/8", {}, dir.path.string(), true, 0};
    config.options.max_iters = 2;
    config.options.samples_per_arc = 8;
    const fs::path run = dir.path / peq::run_id(config);
    REQUIRE(fs::is_directory(run));
    CHECK(fs::exists(run / "report.txt"));
    for (const char* level : {"000", "001", "002"}) {
        const fs::path dump = run / (std::string("curve-") + level + ".txt");
        REQUIRE(fs::exists(dump));
        CHECK_NOTHROW(peq::load_curve(slurp(dump)));
        for (const auto& v : peq::default_views()) {
            CHECK(fs::exists(run / (std::string("curve-") + level + "-" + v.name + ".svg")));
        }
    }
    ::unsetenv(peq::kDumpDirVariable);
    CHECK(cli({"mate", "1/4", "1/8", "--render"}).code == peq::kExitUsage);
}

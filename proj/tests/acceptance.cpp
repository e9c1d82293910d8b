// Acceptance checks. Prints one PASS/FAIL line per criterion. The exit status
// is 0 when the set of failing criteria equals the set named by
// --expect-fail (empty by default), so a known failure is reported on every
// run without turning the test run red, and an unexpected pass or failure
// still does.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "peq/cli.hpp"
#include "peq/mating.hpp"
#include "peq/pullback.hpp"

using peq::Angle;
using peq::chordal_distance;
using peq::Complex;
using peq::SpherePoint;

namespace fs = std::filesystem;

namespace {

// Tolerances and limits, as stated by the criteria.
constexpr double kExactDrift = 1e-9;
constexpr double kCoefficientRelError = 1e-12;
constexpr double kPrintedDigits = 1e-5;
constexpr double kConvergedIncrement = 1e-6;
constexpr int kConvergenceWindow = 100;
constexpr int kMonotoneTail = 10;
constexpr double kPreimageAgreement = 1e-10;
constexpr int kPreimageInstances = 10000;
constexpr double kQuickSeconds = 5.0;
constexpr double kConvergenceSeconds = 60.0;
constexpr double kSuiteSeconds = 30.0;

const Complex I(0.0, 1.0);
const SpherePoint inf = SpherePoint::infinity();

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

bool within_components(const SpherePoint& got, Complex want, double tol) {
    if (got.is_infinity()) return false;
    const Complex d = got.value() - want;
    return std::abs(d.real()) <= tol && std::abs(d.imag()) <= tol;
}

// Relative error of `got` against `want` after the best common scaling.
double projective_error(const peq::Coefficients& got, const std::array<Complex, 4>& want) {
    const std::array<Complex, 4> xs{got.a, got.b, got.c, got.d};
    std::size_t big = 0;
    for (std::size_t i = 1; i < 4; ++i) {
        if (std::abs(want[i]) > std::abs(want[big])) big = i;
    }
    if (xs[big] == Complex(0.0)) return INFINITY;
    const Complex scale = want[big] / xs[big];
    double err = 0, norm = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        err = std::max(err, std::abs(scale * xs[i] - want[i]));
        norm = std::max(norm, std::abs(want[i]));
    }
    return err / norm;
}

Outcome self_mating_exactness() {
    const auto t0 = std::chrono::steady_clock::now();
    peq::IterateOptions o;
    o.min_iters = 10;
    const auto r = peq::iterate(Angle::parse("1/4"), Angle::parse("1/4"), o);
    const double secs = seconds_since(t0);

    double drift = 0;
    bool all_records = r.records.size() >= 11;
    for (const auto& rec : r.records) {
        if (rec.n > 10) break;
        drift = std::max({drift, chordal_distance(rec.u, I), chordal_distance(rec.v, -I), rec.increment});
    }
    const double coeff = r.final_map ? projective_error(r.final_map->coefficients(), {1.0 + I, I - 1.0, I - 1.0, 1.0 + I})
                                     : INFINITY;
    const bool pass = r.ok() && all_records && drift <= kExactDrift && coeff <= kCoefficientRelError && secs < kQuickSeconds;
    return {pass, "status " + std::string(peq::status_name(r.status)) + ", iterations " +
                      std::to_string(r.records.empty() ? 0 : r.records.back().n) + ", max drift " + fmt("%.1e", drift) +
                      ", coefficient error " + fmt("%.1e", coeff) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome first_iteration() {
    const auto t0 = std::chrono::steady_clock::now();
    peq::IterateOptions o;
    o.max_iters = 1;
    const auto r = peq::iterate(Angle::parse("1/4"), Angle::parse("1/8"), o);
    const double secs = seconds_since(t0);
    if (r.records.size() < 2) return {false, "no first iteration: " + r.reason};
    const auto& rec = r.records[1];
    const bool pass = within_components(rec.u, 0.643594 * I, kPrintedDigits) &&
                      within_components(rec.v, -1.18921 * I, kPrintedDigits) && secs < kQuickSeconds;
    return {pass, "u_1 = " + peq::to_string(rec.u, 8) + ", v_1 = " + peq::to_string(rec.v, 8) + ", " +
                      fmt("%.2f", secs) + " s"};
}

Outcome level1_orderings() {
    const auto s0 = peq::base_schedule(Angle::parse("1/4"), Angle::parse("1/8"));
    const auto s1 = peq::pullback_schedule(s0);

    // The printed list, in traversal order, ending with parameter 0.
    const std::vector<std::string> printed{"1/8", "1/4", "3/8", "7/16", "1/2", "5/8", "3/4", "7/8", "15/16", "0"};
    std::vector<std::string> got;
    for (const auto& m : s1.marks) {
        if (m.parameter != 0) got.push_back(peq::param_str(m.parameter));
    }
    if (s1.find(0)) got.push_back("0");
    bool pass = got == printed;

    auto critical_pair = [&](const char* a, const char* b) {
        const auto ia = s1.find(peq::parse_param(a));
        const auto ib = s1.find(peq::parse_param(b));
        if (!ia || !ib) return false;
        const auto& ma = s1.marks[*ia];
        const auto& mb = s1.marks[*ib];
        return ma.kind == peq::MarkKind::CriticalPoint && mb.kind == peq::MarkKind::CriticalPoint &&
               ma.color == mb.color;
    };
    pass = pass && critical_pair("1/8", "5/8") && critical_pair("7/16", "15/16");

    const auto c0 = peq::init_embedding(s0, peq::IterateOptions{}.samples_per_arc);
    const auto [u, v] = peq::read_critical_values(c0);
    const auto c1 = peq::pullback_curve(c0, peq::NormalizedQuadratic::from_critical_values(u, v), s1);
    const double a = 0.643594, b = 1.18921;
    const std::vector<SpherePoint> expected{0.0, a * I, b * I, inf, -1.0, 0.0, -a * I, -b * I, inf, 1.0};
    std::vector<SpherePoint> traversal;
    SpherePoint at_zero;
    for (const auto& s : c1.samples) {
        if (!s.mark) continue;
        if (s.parameter == 0) {
            at_zero = s.position;
        } else {
            traversal.push_back(s.position);
        }
    }
    traversal.push_back(at_zero);
    double worst = 0;
    if (traversal.size() != expected.size()) {
        pass = false;
    } else {
        for (std::size_t i = 0; i < expected.size(); ++i) {
            worst = std::max(worst, chordal_distance(traversal[i], expected[i]));
        }
    }
    pass = pass && worst <= kPrintedDigits;
    std::string list;
    for (const auto& g : got) list += (list.empty() ? "" : " ") + g;
    return {pass, "level-1 list {" + list + "}, traversal error " + fmt("%.1e", worst)};
}

Outcome convergence() {
    const auto t0 = std::chrono::steady_clock::now();
    peq::IterateOptions o;
    o.max_iters = kConvergenceWindow;
    const auto r = peq::iterate(Angle::parse("1/4"), Angle::parse("1/8"), o);
    const double secs = seconds_since(t0);

    double best = INFINITY;
    int best_n = 0;
    for (const auto& rec : r.records) {
        if (rec.n >= 1 && rec.increment < best) {
            best = rec.increment;
            best_n = rec.n;
        }
    }
    bool monotone = r.records.size() > kMonotoneTail;
    for (std::size_t i = r.records.size() - kMonotoneTail; monotone && i < r.records.size(); ++i) {
        if (r.records[i].increment > r.records[i - 1].increment) monotone = false;
    }
    const bool pass = best < kConvergedIncrement && monotone && secs < kConvergenceSeconds;
    return {pass, "smallest increment " + fmt("%.2e", best) + " at n = " + std::to_string(best_n) +
                      ", final 10 non-increasing " + (monotone ? "yes" : "no") + ", status " +
                      peq::status_name(r.status) + ", " + fmt("%.1f", secs) + " s"};
}

Outcome structural_gates() {
    const auto good = peq::analyze_mating(Angle::parse("1/4"), Angle::parse("1/8"));
    const auto pinched = peq::analyze_mating(Angle::parse("1/6"), Angle::parse("13/14"));
    const auto conjugate = peq::analyze_mating(Angle::parse("1/4"), Angle::parse("3/4"));
    const bool a = good.gates_pass() && good.postcritical_count() == 5;
    const bool b = pinched.mateable && !pinched.jordan && !pinched.pinch.empty();
    const bool c = !conjugate.mateable;
    return {a && b && c, std::string("1/4 1/8 passes with 5 points: ") + (a ? "yes" : "no") +
                             "; 1/6 13/14 pinched (" + pinched.pinch + "): " + (b ? "yes" : "no") +
                             "; 1/4 3/4 not mateable: " + (c ? "yes" : "no")};
}

Outcome preimage_oracle() {
    oracle::Gen g(0xacce'97);
    double worst = 0;
    for (int i = 0; i < kPreimageInstances; ++i) {
        SpherePoint u, v;
        do {
            u = g.sphere_complex();
            v = g.sphere_complex();
        } while (chordal_distance(u, v) < 1e-3 || chordal_distance(u, 1.0) < 1e-3 || chordal_distance(v, 1.0) < 1e-3);
        const auto f = peq::NormalizedQuadratic::from_critical_values(u, v);
        const SpherePoint w = g.sphere_complex();
        const auto x = f.preimages(w);
        const auto y = oracle::brute_preimages(f.coefficients(), w);
        const double same = std::max(chordal_distance(x.first, y.first), chordal_distance(x.second, y.second));
        const double swapped = std::max(chordal_distance(x.first, y.second), chordal_distance(x.second, y.first));
        worst = std::max(worst, std::min(same, swapped));
    }
    return {worst <= kPreimageAgreement, std::to_string(kPreimageInstances) + " instances, worst chordal " + fmt("%.1e", worst)};
}

Outcome invariant_suites() {
    const std::vector<std::pair<std::string, std::string>> suites{
        {"lift, schedule and anchor", PEQ_SUITE_PULLBACK},
        {"prune order", PEQ_SUITE_PRUNE},
        {"lamination non-crossing", PEQ_SUITE_LAMINATION},
    };
    bool pass = true;
    std::string detail;
    for (const auto& [name, exe] : suites) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::string cmd = "\"" + exe + "\" --no-intro=true --minimal=true > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        const double secs = seconds_since(t0);
        const bool ok = rc == 0 && secs < kSuiteSeconds;
        pass = pass && ok;
        detail += (detail.empty() ? "" : "; ") + name + (rc == 0 ? " passed" : " FAILED") + " in " + fmt("%.1f", secs) + " s";
    }
    return {pass, detail};
}

// Reads every file under `root`, keyed by relative path.
std::map<std::string, std::string> snapshot(const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        files[fs::relative(e.path(), root).string()] = s.str();
    }
    return files;
}

Outcome determinism() {
    const fs::path base = fs::temp_directory_path() / ("peq-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(base);
    std::vector<std::map<std::string, std::string>> runs;
    std::string detail;
    for (const char* threads : {"1", "1", "4"}) {
        const fs::path dir = base / std::to_string(runs.size());
        std::ostringstream out, err;
        const int rc = peq::run_cli({"mate", "1/4", "1/8", "--iters", "1", "--threads", threads, "--dump", dir.string(),
                                     "--render"},
                                    out, err);
        if (rc != 3 && rc != 0) {
            fs::remove_all(base);
            return {false, "mate exited with " + std::to_string(rc) + ": " + err.str()};
        }
        runs.push_back(snapshot(dir));
    }
    fs::remove_all(base);
    const bool repeat = runs[0] == runs[1];
    const bool threaded = runs[0] == runs[2];
    const bool has_files = runs[0].size() >= 3;
    return {repeat && threaded && has_files, std::to_string(runs[0].size()) + " files; repeat identical " +
                                                 (repeat ? "yes" : "no") + ", 4 threads identical " +
                                                 (threaded ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::vector<int> expected_failures;
    app.add_option("--expect-fail", expected_failures, "criteria known to fail");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"self-mating of 1/4 is exact", self_mating_exactness},
        {"1/4 and 1/8, first iteration", first_iteration},
        {"1/4 and 1/8, level-1 orderings", level1_orderings},
        {"1/4 and 1/8, convergence", convergence},
        {"structural gates", structural_gates},
        {"preimage oracle", preimage_oracle},
        {"invariant suites", invariant_suites},
        {"determinism", determinism},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) failed.insert(k);
        std::cout << "criterion " << k << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
                  << o.detail << std::endl;
    }
    const std::set<int> expected(expected_failures.begin(), expected_failures.end());
    if (failed != expected) {
        std::cout << "failing criteria differ from the expected set" << std::endl;
        return 1;
    }
    return 0;
}

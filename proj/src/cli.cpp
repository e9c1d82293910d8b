#include "peq/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "peq/dump.hpp"
#include "peq/error.hpp"
#include "peq/render.hpp"

namespace peq {

namespace {

namespace fs = std::filesystem;

std::string num(double x, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string point12(const SpherePoint& p) {
    if (p.is_infinity()) return "inf";
    // Adding 0.0 turns -0 into 0.
    return to_string(SpherePoint(Complex(p.value().real() + 0.0, p.value().imag() + 0.0)), 12);
}

std::string limb_str(const std::optional<LimbId>& l) { return l ? l->rotation.str() : "main cardioid"; }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Angles must be strictly preperiodic; anything else is a usage error.
Angle parse_input_angle(const std::string& text) {
    Angle a = Angle::parse(text);
    if (!is_preperiodic(a)) throw InvalidArgument("angle " + a.str() + " is not strictly preperiodic");
    return a;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
    if (!f) throw Error("cannot write " + p.string());
}

int cmd_check(const std::string& as, const std::string& bs, std::ostream& out) {
    const Angle alpha = parse_input_angle(as);
    const Angle beta = parse_input_angle(bs);
    const MatingStructure m = analyze_mating(alpha, beta);
    out << "alpha " << alpha.str() << " limb " << limb_str(m.black_limb) << "\n";
    out << "beta " << beta.str() << " limb " << limb_str(m.red_limb) << "\n";
    out << "mateable " << yes_no(m.mateable) << (m.mateable ? "" : " (conjugate limbs)") << "\n";
    if (!m.mateable) return exit_code(RunStatus::StructuralError);
    out << "jordan " << yes_no(m.jordan);
    if (!m.jordan) out << " (" << m.pinch << ")";
    out << "\n";
    out << "fsr " << yes_no(m.fsr_valid);
    if (!m.fsr_valid) out << " (" << m.fsr_witness << ")";
    out << "\n";
    out << "postcritical " << m.postcritical_count() << "\n";
    if (m.critical_values_identified()) out << "critical values identified\n";
    if (m.orbifold_warning()) out << "warning: at most four postcritical points, the orbifold is not hyperbolic\n";
    return m.gates_pass() ? 0 : exit_code(RunStatus::StructuralError);
}

int cmd_schedule(const std::string& as, const std::string& bs, int level, std::ostream& out) {
    if (level < 0) throw InvalidArgument("--level must be non-negative");
    Schedule s = base_schedule(parse_input_angle(as), parse_input_angle(bs));
    for (int k = 0; k < level; ++k) s = pullback_schedule(s);
    out << "level " << s.level << "\n";
    out << "# parameter kind id\n";
    for (const auto& m : s.marks) {
        out << param_str(m.parameter) << " " << mark_kind_name(m.kind);
        if (m.kind == MarkKind::Postcritical) out << " p" << m.id;
        if (m.kind == MarkKind::CriticalPoint) out << " " << side_name(m.color);
        out << "\n";
    }
    return 0;
}

int cmd_mate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Angle alpha = parse_input_angle(config.alpha);
    const Angle beta = parse_input_angle(config.beta);
    if (config.render && config.dump_dir.empty()) {
        throw InvalidArgument(std::string("--render needs --dump DIR or ") + kDumpDirVariable);
    }
    const std::string id = run_id(config);
    fs::path dir;
    if (!config.dump_dir.empty()) {
        dir = fs::path(config.dump_dir) / id;
        fs::create_directories(dir);
    }

    IterateOptions opts = config.options;
    if (!dir.empty()) {
        opts.on_curve = [&](const DiscreteCurve& c) {
            char stem[32];
            std::snprintf(stem, sizeof stem, "curve-%03d", c.level);
            CurveDump d{id, c, read_critical_values(c)};
            write_file(dir / (std::string(stem) + ".txt"), dump_curve(d));
            if (config.render) {
                for (const auto& v : default_views()) {
                    write_file(dir / (std::string(stem) + "-" + v.name + ".svg"), render_sphere(c, v));
                }
            }
        };
    }
    const RunReport r = iterate(alpha, beta, opts);
    if (!dir.empty()) write_file(dir / "report.txt", format_report(r, id));

    out << "run " << id << "\n";
    out << "status " << status_name(r.status) << "\n";
    if (!r.reason.empty()) out << "reason " << r.reason << "\n";
    if (r.orbifold_warning) err << "warning: at most four postcritical points, the orbifold is not hyperbolic\n";
    if (!r.records.empty()) {
        const auto& last = r.records.back();
        out << "iterations " << last.n << "\n";
        out << "u " << point12(last.u) << "\n";
        out << "v " << point12(last.v) << "\n";
        out << "increment " << num(last.increment, 6) << "\n";
    }
    if (!dir.empty()) out << "artifacts " << dir.string() << "\n";
    return exit_code(r.status);
}

}  // namespace

std::string run_id(const RunConfig& c) {
    const IterateOptions& o = c.options;
    const std::string text = "alpha=" + c.alpha + ";beta=" + c.beta + ";iters=" + std::to_string(o.max_iters) +
                             ";min_iters=" + std::to_string(o.min_iters) + ";tol=" + num(o.tol, 17) +
                             ";samples=" + std::to_string(o.samples_per_arc) + ";budget=" + std::to_string(o.budget) +
                             ";render=" + (c.render ? "1" : "0") + ";seed=" + std::to_string(c.seed);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pseudo-equator pullback for matings of quadratic polynomials", "peq"};
    app.require_subcommand(1);

    std::string alpha, beta;
    int level = 0;
    RunConfig config;
    if (const char* env = std::getenv(kDumpDirVariable)) config.dump_dir = env;

    auto* check = app.add_subcommand("check", "Run the structural gates");
    check->add_option("alpha", alpha, "black external angle")->required();
    check->add_option("beta", beta, "red external angle")->required();

    auto* schedule = app.add_subcommand("schedule", "Print the marked parameters of C_n");
    schedule->add_option("alpha", alpha, "black external angle")->required();
    schedule->add_option("beta", beta, "red external angle")->required();
    schedule->add_option("--level", level, "pullback level")->capture_default_str();

    auto* mate = app.add_subcommand("mate", "Run the pullback iteration");
    mate->add_option("alpha", config.alpha, "black external angle")->required();
    mate->add_option("beta", config.beta, "red external angle")->required();
    mate->add_option("--iters", config.options.max_iters, "maximum iterations")->capture_default_str();
    mate->add_option("--min-iters", config.options.min_iters, "iterate at least this often")->capture_default_str();
    mate->add_option("--tol", config.options.tol, "convergence tolerance")->capture_default_str();
    mate->add_option("--samples", config.options.samples_per_arc, "samples per arc of C_0")->capture_default_str();
    mate->add_option("--budget", config.options.budget, "sample budget after pruning")->capture_default_str();
    mate->add_option("--threads", config.options.threads, "threads for arc lifting")->capture_default_str();
    mate->add_option("--dump", config.dump_dir, std::string("artifact directory (default $") + kDumpDirVariable + ")");
    mate->add_flag("--render", config.render, "write SVG pictures of every curve");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "peq: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*check) return cmd_check(alpha, beta, out);
        if (*schedule) return cmd_schedule(alpha, beta, level, out);
        return cmd_mate(config, out, err);
    } catch (const InvalidArgument& e) {
        err << "peq: " << e.what() << "\n";
        return kExitUsage;
    } catch (const StructuralError& e) {
        err << "peq: " << e.what() << "\n";
        return exit_code(RunStatus::StructuralError);
    } catch (const NumericError& e) {
        err << "peq: " << e.what() << "\n";
        return exit_code(RunStatus::NumericError);
    } catch (const std::exception& e) {
        err << "peq: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace peq

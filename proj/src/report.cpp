#include <cstdio>
#include <sstream>

#include "peq/pullback.hpp"

namespace peq {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string complex_str(const Complex& z) { return num(z.real()) + " " + num(z.imag()); }

}  // namespace

std::string format_report(const RunReport& r, const std::string& run_id) {
    std::ostringstream out;
    out << "# run-report v1\n";
    out << "run " << run_id << "\n";
    out << "alpha " << r.alpha.str() << "\n";
    out << "beta " << r.beta.str() << "\n";
    out << "max_iters " << r.options.max_iters << "\n";
    out << "tol " << num(r.options.tol) << "\n";
    out << "samples_per_arc " << r.options.samples_per_arc << "\n";
    out << "budget " << r.options.budget << "\n";
    out << "min_iters " << r.options.min_iters << "\n";
    out << "lift_fidelity " << num(kTolerances.lift_fidelity) << "\n";
    out << "prune_clearance " << num(kTolerances.prune_clearance) << "\n";
    out << "postcritical " << r.postcritical_count << "\n";
    out << "orbifold_warning " << (r.orbifold_warning ? "yes" : "no") << "\n";
    out << "records " << r.records.size() << "\n";
    out << "# n u v samples_before samples_after displacement increment lift_error\n";
    for (const auto& rec : r.records) {
        out << "record " << rec.n << " " << to_string(rec.u) << " " << to_string(rec.v) << " "
            << rec.samples_before << " " << rec.samples_after << " " << num(rec.displacement) << " "
            << num(rec.increment) << " " << num(rec.lift_error) << "\n";
    }
    out << "status " << status_name(r.status) << "\n";
    if (!r.reason.empty()) out << "reason " << r.reason << "\n";
    if (r.final_map) {
        out << "map " << to_string(r.final_map->u()) << " " << to_string(r.final_map->v()) << "\n";
        const auto k = r.final_map->coefficients();
        out << "coefficients " << complex_str(k.a) << " " << complex_str(k.b) << " " << complex_str(k.c) << " "
            << complex_str(k.d) << "\n";
    }
    out << "end\n";
    return out.str();
}

}  // namespace peq

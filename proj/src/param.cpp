#include "peq/param.hpp"

#include <cctype>

#include "peq/error.hpp"

namespace peq {

using boost::multiprecision::cpp_int;

Param to_param(const Angle& a) { return Param(cpp_int(a.numerator()), cpp_int(a.denominator())); }

Param wrap_unit(const Param& t) {
    cpp_int n = numerator(t);
    cpp_int d = denominator(t);
    cpp_int r = n % d;
    if (r < 0) r += d;
    return Param(r, d);
}

Param double_param(const Param& t) { return wrap_unit(t * 2); }

std::pair<Param, Param> halve_param(const Param& t) {
    Param h = t / 2;
    return {h, h + Param(1, 2)};
}

Param arc_midpoint(const Param& a, const Param& b) {
    Param len = b - a;
    if (len <= 0) len += 1;
    return wrap_unit(a + len / 2);
}

double param_to_double(const Param& t) { return t.convert_to<double>(); }

std::string param_str(const Param& t) {
    if (t == 0) return "0";
    return numerator(t).str() + "/" + denominator(t).str();
}

Param parse_param(std::string_view text) {
    auto digits = [&](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (text != "0") throw InvalidArgument("malformed parameter '" + std::string(text) + "'");
        return Param(0);
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw InvalidArgument("malformed parameter '" + std::string(text) + "'");
    cpp_int n{std::string(num)};
    cpp_int d{std::string(den)};
    if (d == 0 || n >= d) throw InvalidArgument("parameter '" + std::string(text) + "' is outside [0, 1)");
    Param p(n, d);
    if (numerator(p) != n) throw InvalidArgument("parameter '" + std::string(text) + "' is not in lowest terms");
    return p;
}

}  // namespace peq

#include "peq/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "peq/error.hpp"

namespace peq {

std::optional<std::size_t> DiscreteCurve::index_of(const Param& t) const {
    auto it = std::lower_bound(samples.begin(), samples.end(), t,
                               [](const CurveSample& s, const Param& x) { return s.parameter < x; });
    if (it == samples.end() || it->parameter != t) return std::nullopt;
    return static_cast<std::size_t>(it - samples.begin());
}

const SpherePoint& DiscreteCurve::position_at(const Param& t) const {
    auto i = index_of(t);
    if (!i) throw StructuralError("curve has no sample at parameter " + param_str(t));
    return samples[*i].position;
}

std::vector<SpherePoint> DiscreteCurve::postcritical_positions() const {
    std::vector<SpherePoint> out;
    out.reserve(schedule.postcritical.size());
    for (const auto& t : schedule.postcritical) out.push_back(position_at(to_param(t)));
    return out;
}

void DiscreteCurve::validate() const {
    if (samples.empty() || samples.front().parameter != 0) {
        throw StructuralError("curve lacks its parameter-0 sample");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i - 1].parameter < samples[i].parameter)) {
            throw StructuralError("curve parameters are not strictly increasing at " + param_str(samples[i].parameter));
        }
    }
    if (samples.back().parameter >= 1) throw StructuralError("curve parameter outside [0, 1)");
    std::size_t marked = 0;
    for (const auto& s : samples) {
        if (!s.mark) continue;
        ++marked;
        if (*s.mark >= schedule.marks.size() || schedule.marks[*s.mark].parameter != s.parameter) {
            throw StructuralError("sample at " + param_str(s.parameter) + " carries a foreign mark");
        }
    }
    if (marked != schedule.marks.size()) throw StructuralError("curve does not realize its schedule");
}

SpherePoint unit_circle_point(const Param& t) {
    // t = k/4 + r with |r| <= 1/8, then rotate exp(2 pi i r) by i^k.
    const Param w = wrap_unit(t);
    const Param four = w * 4;
    boost::multiprecision::cpp_int k = numerator(four) / denominator(four);
    Param r = w - Param(k) / 4;
    if (r > Param(1, 8)) {
        r -= Param(1, 4);
        k += 1;
    }
    const double angle = 2.0 * std::numbers::pi * param_to_double(r);
    Complex z = r == 0 ? Complex(1.0, 0.0) : Complex(std::cos(angle), std::sin(angle));
    switch (static_cast<int>(k % 4)) {
        case 1: z = Complex(-z.imag(), z.real()); break;
        case 2: z = -z; break;
        case 3: z = Complex(z.imag(), -z.real()); break;
        default: break;
    }
    return SpherePoint(z);
}

DiscreteCurve init_embedding(const Schedule& s, int samples_per_arc) {
    if (samples_per_arc < 1) throw InvalidArgument("samples_per_arc must be positive");
    std::vector<Param> params = s.parameters();
    if (params.empty() || params.front() != 0) params.insert(params.begin(), Param(0));

    DiscreteCurve c;
    c.level = s.level;
    c.schedule = s;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const Param& a = params[i];
        Param len = (i + 1 < params.size() ? params[i + 1] : Param(1)) - a;
        c.samples.push_back({a, unit_circle_point(a), s.find(a)});
        for (int j = 1; j <= samples_per_arc; ++j) {
            Param t = a + len * j / (samples_per_arc + 1);
            c.samples.push_back({t, unit_circle_point(t), std::nullopt});
        }
    }
    c.validate();
    return c;
}

DiscreteCurve with_schedule(DiscreteCurve c, const Schedule& s) {
    c.schedule = s;
    for (auto& sample : c.samples) sample.mark = s.find(sample.parameter);
    c.validate();
    return c;
}

}  // namespace peq

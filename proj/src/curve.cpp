#include "curve4d/curve.hpp"

namespace curve4d {

namespace {

constexpr int kProbePoints = 64;

void probe_domain(const std::array<ExprPtr, 4>& coords, Interval domain)
{
    for (int j = 0; j < kProbePoints; ++j) {
        const double s =
            domain.lo + domain.span() * double(j) / double(kProbePoints - 1);
        for (int c = 0; c < 4; ++c) {
            try {
                const Jet4d value = eval(*coords[std::size_t(c)], Jet4d::variable(s));
                if (!value.all_finite())
                    throw DomainProbeError(c, s, "value or derivative is not finite");
            } catch (const DomainError& e) {
                throw DomainProbeError(c, s, e.what());
            }
        }
    }
}

} // namespace

CurveSpec make_curve(std::array<ExprPtr, 4> coords, std::string label, Interval domain)
{
    probe_domain(coords, domain);
    return CurveSpec{std::move(coords), std::move(label), domain};
}

CurveSpec parse_curve(std::string_view text, Interval domain)
{
    auto exprs = parse_expression_list(text, 4);
    return make_curve({exprs[0], exprs[1], exprs[2], exprs[3]}, std::string(text), domain);
}

CurveSpec builtin_curve(std::string_view name)
{
    const double four_pi = 4.0 * 3.14159265358979323846;
    const double two_pi = 2.0 * 3.14159265358979323846;
    if (name == "example1")
        return parse_curve("sin(s), 2*s + 1, 2*s - 1, s", {-1.0, 1.0});
    if (name == "example2")
        return parse_curve(
            "sin(s/sqrt(2)), cos(s/sqrt(2)), sin(s)/sqrt(2), cos(s)/sqrt(2)", {0.0, two_pi});
    if (name == "circle") return parse_curve("cos(s), sin(s), 0, 0", {0.0, two_pi});
    if (name == "line") return parse_curve("s, 0, 0, 0", {0.0, 1.0});
    if (name == "helix3")
        return parse_curve("cos(s/sqrt(2)), sin(s/sqrt(2)), s/sqrt(2), 0", {0.0, four_pi});
    throw UnknownCurveError(std::string(name));
}

CurveSpec with_domain(const CurveSpec& spec, Interval domain)
{
    return make_curve(spec.coords, spec.label, domain);
}

JetVec4d eval_curve_jet(const CurveSpec& spec, double s0)
{
    const Jet4d s = Jet4d::variable(s0);
    return JetVec4d(eval(*spec.coords[0], s), eval(*spec.coords[1], s), eval(*spec.coords[2], s),
                    eval(*spec.coords[3], s));
}

} // namespace curve4d

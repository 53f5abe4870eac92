#pragma once

#include <array>
#include <string>

#include "curve4d/expr.hpp"
#include "curve4d/jet_vec.hpp"

namespace curve4d {

/// Closed parameter interval.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double span() const { return hi - lo; }
    bool contains(double t) const { return t >= lo && t <= hi; }
};

/// A parsed analytic curve in E^4: four coordinate expressions of the
/// parameter s plus the closed interval they are defined on. Immutable after
/// construction; construction probes a 64-point grid of the domain so that
/// log/sqrt domain violations fail fast.
struct CurveSpec {
    std::array<ExprPtr, 4> coords;
    std::string label;
    Interval domain;
};

/// Parses "x1, x2, x3, x4" into a CurveSpec over `domain`.
CurveSpec parse_curve(std::string_view text, Interval domain);

/// Builds a CurveSpec from already-parsed coordinates (probes the domain).
CurveSpec make_curve(std::array<ExprPtr, 4> coords, std::string label, Interval domain);

/// Catalog entries: example1, example2, circle, line, helix3.
CurveSpec builtin_curve(std::string_view name);

/// Same curve restricted to (or extended over) a different interval.
CurveSpec with_domain(const CurveSpec& spec, Interval domain);

/// alpha(s0) together with its derivatives through order 4.
JetVec4d eval_curve_jet(const CurveSpec& spec, double s0);

} // namespace curve4d

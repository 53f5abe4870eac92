#pragma once

#include <vector>

#include "curve4d/curve.hpp"

namespace curve4d {

/// A curve sampled on a strictly increasing parameter grid. `jets` carry
/// derivatives with respect to the raw parameter t; `s_jets` carry the same
/// data re-expressed as derivatives with respect to arclength, so the frame
/// formulas can assume unit speed.
struct CurveSampling {
    std::vector<double> params;   // t_j, strictly increasing
    std::vector<JetVec4d> jets;   // t-derivatives per point
    std::vector<double> speeds;   // ||alpha'(t_j)||
    std::vector<double> arclens;  // cumulative arclength, arclens[0] = 0
    std::vector<JetVec4d> s_jets; // arclength-derivatives per point

    std::size_t size() const { return params.size(); }
};

constexpr std::size_t kMinSamples = 9;

/// Uniform grid over the curve's domain; fills params, jets, speeds and
/// arclens (composite Simpson quadrature of the speed). Call
/// to_arclength_jets afterwards for the unit-speed derivatives.
CurveSampling sample_curve(const CurveSpec& spec, int n);

/// Fills s_jets by applying d/ds = (1/||alpha'(t)||) d/dt recursively through
/// order 4. For curves that are already unit speed this reproduces `jets`.
CurveSampling to_arclength_jets(CurveSampling samp);

/// sample_curve followed by to_arclength_jets.
CurveSampling sample_arclength(const CurveSpec& spec, int n);

/// Builds a sampling from bare points on a (possibly nonuniform) grid: jets
/// by 5-point finite differences (one-sided at the boundaries), arclength by
/// derivative-corrected trapezoid. Accuracy is limited by the grid spacing;
/// the analytic path is exact.
CurveSampling sampling_from_points(const std::vector<double>& t,
                                   const std::vector<Eigen::Vector4d>& x);

/// Arclength-derivative conversion for a single point.
JetVec4d arclength_jet(const JetVec4d& jet);

} // namespace curve4d

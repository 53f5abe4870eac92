#pragma once

#include <optional>
#include <vector>

#include "curve4d/parallel.hpp"

namespace curve4d {

/// Which linear curvature relation is fitted: a k1 + b k2 + c k3 + 1 = 0
/// (spherical), c2 k2 + c3 k3 + 1 = 0 (rectifying), or
/// l2 k1 + l3 k3 + 1 = 0 (osculating).
enum class RelationMode { Spherical, Rectifying, Osculating };

const char* name(RelationMode mode);

struct LinearRelationFit {
    RelationMode mode = RelationMode::Spherical;
    /// Coefficients placed at their k-space positions; entries outside the
    /// mode's pattern are zero.
    Eigen::Vector3d coeffs = Eigen::Vector3d::Zero();
    double rms_residual = 0.0;
    bool rank_deficient = false;
    /// 1/||coeffs||: distance of the plane coeffs . k + 1 = 0 from the
    /// origin; defined only for a nonzero coefficient vector.
    std::optional<double> plane_distance;
};

struct SphereFit {
    Eigen::Vector4d center = Eigen::Vector4d::Zero();
    double radius = 0.0;
    double rms_residual = 0.0; // RMS of ||alpha_j - center|| - radius
};

struct ClassificationReport {
    bool spherical = false;
    bool normal = false;    // equals spherical (normal <=> spherical)
    bool rectifying = false;
    bool osculating = false;
    LinearRelationFit fit_spherical, fit_rectifying, fit_osculating;
    std::optional<SphereFit> sphere;
    /// Max drift of the anchor constants <alpha - P, M_i> and of the constant
    /// vectors X behind the rectifying/osculating verdicts; absent when no
    /// check applies.
    std::optional<double> anchor_constancy;
    std::optional<double> radius_identity_gap; // |r^2 - (a^2 + b^2 + c^2)|
};

/// Least-squares fit of the mode's relation over the series via SVD with
/// singular-value cutoff 1e-10 * sigma_max; rank-deficient fits return the
/// minimal-norm solution.
LinearRelationFit fit_linear_relation(const std::vector<PTCurvatureSample>& k, RelationMode mode);

/// Direct sphere fit (independent of the curvature relations): linear least
/// squares on ||alpha_j||^2 = 2 <alpha_j, P> + (r^2 - ||P||^2). Throws
/// DegenerateGeometryError when the points carry no curvature information
/// (e.g. a straight line); configurations that determine the sphere only up
/// to directions orthogonal to their span get the minimal-norm center.
SphereFit fit_sphere_direct(const CurveSampling& samp);

struct ClassifyTolerances {
    /// Relation verdicts require rms_residual <= relation_tol * (1 + RMS |k|).
    double relation_tol = 1e-6;
};

ClassificationReport classify_curve(const CurveSampling& samp,
                                    const std::vector<FrameSample>& frames,
                                    const std::vector<PTCurvatureSample>& k,
                                    const ClassifyTolerances& tol = {});

} // namespace curve4d

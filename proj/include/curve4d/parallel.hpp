#pragma once

#include <optional>
#include <vector>

#include "curve4d/frenet.hpp"

namespace curve4d {

/// Parallel transport curvatures at one sample: k_i = <T', M_i>.
struct PTCurvatureSample {
    double s = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;

    Eigen::Vector3d k() const { return {k1, k2, k3}; }
};

enum class PropagationMethod { Rk4, DoubleReflection };

/// Initial parallel transport frame for a given unit tangent. With a Frenet
/// hint the normals start as (N, B1, B2), fixing the rotation gauge so the
/// Euler angles vanish at the start; otherwise the tangent is completed by
/// pivoted Gram-Schmidt over the standard basis (pivot = axis with smallest
/// |<e_i, T0>|, remaining axes in index order), orientation corrected to
/// determinant +1.
FrameSample init_pt_frame(const Eigen::Vector4d& tangent,
                          const std::optional<FrameSample>& hint = std::nullopt);

/// Propagates frame0 along the sampling: one frame per grid point, tangent
/// row taken exactly from the sampling. Rk4 integrates M_i' = -<alpha'', M_i> T
/// in arclength with re-orthonormalization after each step; DoubleReflection
/// reflects across the chord bisector hyperplane and then across the tangent
/// bisector. Both succeed through Frenet-degenerate points.
std::vector<FrameSample> propagate_pt(const CurveSampling& samp, const FrameSample& frame0,
                                      PropagationMethod method);

std::vector<PTCurvatureSample> pt_curvatures(const CurveSampling& samp,
                                             const std::vector<FrameSample>& frames);

/// Prescribed curvature profile: k1(s), k2(s), k3(s) as expressions of
/// arclength over a domain interval.
struct KProfile {
    std::array<ExprPtr, 3> k;
    Interval domain;
};

KProfile parse_kprofile(std::string_view text, Interval domain);

struct SynthesisResult {
    CurveSampling sampling;             // unit speed by construction
    std::vector<FrameSample> frames;    // parallel transport frames
};

/// Integrates the full frame system alpha' = T, T' = sum k_i M_i,
/// M_i' = -k_i T from the profile domain's left endpoint with RK4 on the
/// joint 20-dimensional state, re-orthonormalizing after each step. Takes
/// `n` steps of size `step`, producing n+1 samples.
SynthesisResult synthesize_curve(const KProfile& profile, const FrameSample& frame0,
                                 const Eigen::Vector4d& origin, double step, int n);

} // namespace curve4d

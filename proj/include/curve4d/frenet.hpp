#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "curve4d/sampling.hpp"

namespace curve4d {

enum class FrameFlavor { Frenet, ParallelTransport };

/// An orthonormal 4-frame attached at one arclength value. Row 0 is the
/// tangent; rows 1..3 are the normals (N, B1, B2 for Frenet flavor, or
/// M1, M2, M3 for parallel transport flavor). Rows form a positively
/// oriented basis (determinant +1).
struct FrameSample {
    double s = 0.0;
    Eigen::Matrix4d vectors = Eigen::Matrix4d::Identity();
    FrameFlavor flavor = FrameFlavor::Frenet;

    Eigen::Vector4d tangent() const { return vectors.row(0); }
    Eigen::Vector4d normal(int i) const { return vectors.row(i + 1); }

    /// max |<v_i, v_j> - delta_ij| over all row pairs.
    double orthonormality_defect() const;
};

/// Completes (a, b, c) to a positively oriented basis of E^4: the returned
/// vector d is orthogonal to all three and det[a; b; c; d] > 0.
Eigen::Vector4d cross4(const Eigen::Vector4d& a, const Eigen::Vector4d& b,
                       const Eigen::Vector4d& c);

/// Residual norms below this are treated as a degenerate Frenet level.
constexpr double kDegeneracyTol = 1e-9;

/// Frenet frame from arclength derivatives: T = dalpha/ds, then N and B1 by
/// Gram-Schmidt on the second and third derivatives, B2 completing the
/// orientation. Throws DegenerateFrameError(level) when a Gram-Schmidt
/// residual vanishes, i.e. the frame does not exist at this point.
FrameSample gram_schmidt_frame(const JetVec4d& derivs, double s);

/// Frenet curvatures at one sample. kappa = ||d^2 alpha / ds^2|| is always
/// reported; tau and sigma are masked where the construction degenerates and
/// must not be consumed when their flag is false.
struct FrenetCurvatureSample {
    double s = 0.0;
    double kappa = 0.0;
    double tau = 0.0;
    double sigma = 0.0;
    bool tau_defined = false;
    bool sigma_defined = false;
};

/// Per-sample Frenet data over a sampling; frames are absent where the
/// construction degenerates (level records the failing Gram-Schmidt stage,
/// 0 where the full frame exists).
struct FrenetField {
    std::vector<std::optional<FrameSample>> frames;
    std::vector<int> degeneracy_level;
    std::size_t size() const { return frames.size(); }
};

FrenetField frenet_frames(const CurveSampling& samp);

std::vector<FrenetCurvatureSample> frenet_apparatus(const FrenetField& field,
                                                    const CurveSampling& samp);

} // namespace curve4d

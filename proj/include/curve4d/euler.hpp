#pragma once

#include <optional>
#include <vector>

#include "curve4d/frenet.hpp"
#include "curve4d/parallel.hpp"

namespace curve4d {

/// Euler angles of the rotation taking the parallel transport normal triple
/// onto the Frenet normal triple, convention R = R_z(psi) R_y(theta) R_x(phi).
/// theta in [-pi/2, pi/2]; phi, psi in (-pi, pi]. At gimbal lock
/// (|cos theta| < 1e-6) phi is fixed to 0 and psi absorbs the free angle.
struct EulerAngles {
    double theta = 0.0;
    double phi = 0.0;
    double psi = 0.0;
    bool gimbal = false;
};

/// R[i][j] = <frenet normal i, pt normal j>; orthogonal with determinant +1
/// since both frames share the tangent and are positively oriented.
Eigen::Matrix3d frame_rotation_matrix(const FrameSample& frenet, const FrameSample& pt);

/// R_z(psi) R_y(theta) R_x(phi).
Eigen::Matrix3d euler_rotation_matrix(const EulerAngles& angles);

EulerAngles extract_euler_angles(const Eigen::Matrix3d& rotation);

/// Residuals of the curvature and angle-derivative relations. Absent entries
/// are not applicable at that sample (masked curvature, vanishing
/// denominator, or missing neighbors for the finite differences).
struct RelationResiduals {
    double s = 0.0;
    std::optional<double> r_k1, r_k2, r_k3;
    std::optional<double> r_theta, r_tau, r_sigma, r_constraint;
};

/// k-part: r_ki = k_i - kappa * (rotation-matrix entry in the angles).
RelationResiduals curvature_relation_residuals(double kappa, const EulerAngles& angles,
                                               const PTCurvatureSample& k);

/// Euler angles per sample of a propagated pair of frame fields; absent where
/// the Frenet frame does not exist.
struct EulerSample {
    double s = 0.0;
    std::optional<EulerAngles> angles;
};

std::vector<EulerSample> euler_angle_series(const FrenetField& frenet,
                                            const std::vector<FrameSample>& pt);

/// Diagnostic residuals of the angle ODE relations (theta' = sigma/sqrt(kappa^2+tau^2),
/// tau = -psi' + phi' sin theta, sigma = theta'/sin psi, phi' cos theta + theta' cot psi = 0).
/// Angle derivatives come from central differences on an unwrapped branch.
/// Report-only; nothing is asserted against them.
std::vector<RelationResiduals> angle_ode_residuals(
    const std::vector<EulerSample>& angles, const std::vector<FrenetCurvatureSample>& curvatures);

} // namespace curve4d

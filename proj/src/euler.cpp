#include "curve4d/euler.hpp"

#include <Eigen/LU>

#include <cmath>

namespace curve4d {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGimbalTol = 1e-6;
constexpr double kDenomTol = 1e-6;

double clamp_unit(double x) { return std::min(1.0, std::max(-1.0, x)); }

/// Maps atan2's [-pi, pi] onto (-pi, pi].
double principal(double angle) { return angle == -kPi ? kPi : angle; }

} // namespace

Eigen::Matrix3d frame_rotation_matrix(const FrameSample& frenet, const FrameSample& pt)
{
    const double tdot = frenet.tangent().dot(pt.tangent());
    if (!(tdot > 1.0 - 1e-8)) throw TangentMismatchError(tdot);

    Eigen::Matrix3d r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = frenet.normal(i).dot(pt.normal(j));
    return r;
}

Eigen::Matrix3d euler_rotation_matrix(const EulerAngles& a)
{
    const double ct = std::cos(a.theta), st = std::sin(a.theta);
    const double cf = std::cos(a.phi), sf = std::sin(a.phi);
    const double cp = std::cos(a.psi), sp = std::sin(a.psi);
    Eigen::Matrix3d r;
    r << ct * cp, sf * st * cp - cf * sp, cf * st * cp + sf * sp,
         ct * sp, sf * st * sp + cf * cp, cf * st * sp - sf * cp,
         -st,     sf * ct,               cf * ct;
    return r;
}

EulerAngles extract_euler_angles(const Eigen::Matrix3d& r)
{
    const double ortho = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (ortho > 1e-6) throw NotRotationError("R^T R deviates from I by " + std::to_string(ortho));
    if (!(r.determinant() > 0.0))
        throw NotRotationError("determinant is " + std::to_string(r.determinant()));

    EulerAngles a;
    a.theta = std::asin(clamp_unit(-r(2, 0)));
    if (std::abs(std::cos(a.theta)) < kGimbalTol) {
        // Only phi -+ psi is determined; put it all in psi.
        a.gimbal = true;
        a.phi = 0.0;
        if (a.theta > 0.0)
            a.psi = principal(std::atan2(-r(0, 1), r(0, 2)));
        else
            a.psi = principal(std::atan2(-r(0, 1), -r(0, 2)));
        return a;
    }
    a.phi = principal(std::atan2(r(2, 1), r(2, 2)));
    a.psi = principal(std::atan2(r(1, 0), r(0, 0)));
    return a;
}

RelationResiduals curvature_relation_residuals(double kappa, const EulerAngles& a,
                                               const PTCurvatureSample& k)
{
    const double ct = std::cos(a.theta), st = std::sin(a.theta);
    const double cf = std::cos(a.phi), sf = std::sin(a.phi);
    const double cp = std::cos(a.psi), sp = std::sin(a.psi);

    RelationResiduals r;
    r.s = k.s;
    r.r_k1 = k.k1 - kappa * ct * cp;
    r.r_k2 = k.k2 - kappa * (sf * st * cp - cf * sp);
    r.r_k3 = k.k3 - kappa * (cf * st * cp + sf * sp);
    return r;
}

std::vector<EulerSample> euler_angle_series(const FrenetField& frenet,
                                            const std::vector<FrameSample>& pt)
{
    if (frenet.size() != pt.size())
        throw MismatchedSeriesError("Frenet and parallel transport series differ in length");

    std::vector<EulerSample> out;
    out.reserve(pt.size());
    for (std::size_t j = 0; j < pt.size(); ++j) {
        EulerSample sample;
        sample.s = pt[j].s;
        if (frenet.frames[j])
            sample.angles = extract_euler_angles(frame_rotation_matrix(*frenet.frames[j], pt[j]));
        out.push_back(sample);
    }
    return out;
}

namespace {

/// Adds multiples of 2 pi so consecutive defined values never jump by more
/// than pi; central differences across branch cuts are garbage.
std::vector<std::optional<double>> unwrap(const std::vector<EulerSample>& series,
                                          double EulerAngles::*member)
{
    std::vector<std::optional<double>> out(series.size());
    std::optional<double> prev;
    for (std::size_t j = 0; j < series.size(); ++j) {
        if (!series[j].angles) continue;
        double v = (*series[j].angles).*member;
        if (prev) v += 2.0 * kPi * std::round((*prev - v) / (2.0 * kPi));
        out[j] = v;
        prev = v;
    }
    return out;
}

/// Central difference on a possibly nonuniform grid, exact for quadratics.
std::optional<double> central_diff(const std::vector<std::optional<double>>& f,
                                   const std::vector<double>& s, std::size_t j)
{
    if (j == 0 || j + 1 >= f.size()) return std::nullopt;
    if (!f[j - 1] || !f[j] || !f[j + 1]) return std::nullopt;
    const double hm = s[j] - s[j - 1];
    const double hp = s[j + 1] - s[j];
    if (!(hm > 0.0) || !(hp > 0.0)) return std::nullopt;
    return (*f[j + 1] * hm * hm - *f[j - 1] * hp * hp + *f[j] * (hp * hp - hm * hm)) /
           (hp * hm * (hp + hm));
}

} // namespace

std::vector<RelationResiduals> angle_ode_residuals(
    const std::vector<EulerSample>& angles, const std::vector<FrenetCurvatureSample>& curvatures)
{
    if (angles.size() != curvatures.size())
        throw MismatchedSeriesError("angle and curvature series differ in length");

    std::vector<double> grid(angles.size());
    for (std::size_t j = 0; j < angles.size(); ++j) grid[j] = angles[j].s;

    const auto theta = unwrap(angles, &EulerAngles::theta);
    const auto phi = unwrap(angles, &EulerAngles::phi);
    const auto psi = unwrap(angles, &EulerAngles::psi);

    std::vector<RelationResiduals> out(angles.size());
    for (std::size_t j = 0; j < angles.size(); ++j) {
        out[j].s = angles[j].s;
        if (!angles[j].angles) continue;

        const auto dtheta = central_diff(theta, grid, j);
        const auto dphi = central_diff(phi, grid, j);
        const auto dpsi = central_diff(psi, grid, j);
        if (!dtheta || !dphi || !dpsi) continue;

        const EulerAngles& a = *angles[j].angles;
        const FrenetCurvatureSample& c = curvatures[j];
        const double sin_psi = std::sin(a.psi);
        const double speed_kt = std::hypot(c.kappa, c.tau_defined ? c.tau : 0.0);

        if (c.sigma_defined && c.tau_defined && speed_kt > kDenomTol)
            out[j].r_theta = *dtheta - c.sigma / speed_kt;
        if (c.tau_defined) out[j].r_tau = c.tau - (-*dpsi + *dphi * std::sin(a.theta));
        if (c.sigma_defined && std::abs(sin_psi) > kDenomTol)
            out[j].r_sigma = c.sigma - *dtheta / sin_psi;
        if (std::abs(sin_psi) > kDenomTol)
            out[j].r_constraint = *dphi * std::cos(a.theta) + *dtheta * std::cos(a.psi) / sin_psi;
    }
    return out;
}

} // namespace curve4d

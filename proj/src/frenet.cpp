#include "curve4d/frenet.hpp"

#include <Eigen/LU>

namespace curve4d {

double FrameSample::orthonormality_defect() const
{
    const Eigen::Matrix4d gram = vectors * vectors.transpose();
    return (gram - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
}

Eigen::Vector4d cross4(const Eigen::Vector4d& a, const Eigen::Vector4d& b,
                       const Eigen::Vector4d& c)
{
    // Cofactor expansion of det[e; a; b; c] along the symbolic first row,
    // negated so that det[a; b; c; result] = +||result||^2.
    Eigen::Vector4d d;
    Eigen::Matrix3d minor;
    for (int i = 0; i < 4; ++i) {
        int col = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            minor(0, col) = a[j];
            minor(1, col) = b[j];
            minor(2, col) = c[j];
            ++col;
        }
        const double sign = (i % 2 == 0) ? -1.0 : 1.0;
        d[i] = sign * minor.determinant();
    }
    return d;
}

namespace {

/// Shared per-point kernel: Gram-Schmidt on the arclength derivatives plus
/// the curvature magnitudes that fall out of it. `level` is the first
/// degenerate stage (0 when the full frame exists).
struct PointAnalysis {
    int level = 0;
    Eigen::Vector4d tangent = Eigen::Vector4d::Zero();
    Eigen::Vector4d normal1 = Eigen::Vector4d::Zero();  // N
    Eigen::Vector4d binormal1 = Eigen::Vector4d::Zero(); // B1
    Eigen::Vector4d binormal2 = Eigen::Vector4d::Zero(); // B2
    double kappa = 0.0;
    double tau = 0.0;
    double sigma = 0.0;
    bool tau_defined = false;
    bool sigma_defined = false;
    double failing_residual = 0.0;
};

PointAnalysis analyze_point(const JetVec4d& derivs)
{
    PointAnalysis out;
    const Eigen::Vector4d d1 = derivs.derivative(1);
    const Eigen::Vector4d d2 = derivs.derivative(2);
    const Eigen::Vector4d d3 = derivs.derivative(3);
    const Eigen::Vector4d d4 = derivs.derivative(4);

    out.tangent = d1.normalized();
    out.kappa = d2.norm();

    const Eigen::Vector4d u2 = d2 - d2.dot(out.tangent) * out.tangent;
    if (u2.norm() < kDegeneracyTol) {
        out.level = 2;
        out.failing_residual = u2.norm();
        return out;
    }
    out.normal1 = u2.normalized();

    // alpha''' = -kappa^2 T + kappa' N + kappa tau B1, so the level-3
    // residual norm is kappa*tau; tau is meaningful as soon as N exists.
    const Eigen::Vector4d u3 =
        d3 - d3.dot(out.tangent) * out.tangent - d3.dot(out.normal1) * out.normal1;
    out.tau = u3.norm() / out.kappa;
    out.tau_defined = true;

    if (u3.norm() < kDegeneracyTol) {
        out.level = 3;
        out.failing_residual = u3.norm();
        return out;
    }
    out.binormal1 = u3.normalized();
    out.binormal2 = cross4(out.tangent, out.normal1, out.binormal1).normalized();

    // <alpha'''', B2> = kappa tau sigma carries sigma's sign.
    out.sigma = d4.dot(out.binormal2) / u3.norm();
    out.sigma_defined = true;
    return out;
}

FrameSample frame_from(const PointAnalysis& p, double s)
{
    FrameSample frame;
    frame.s = s;
    frame.flavor = FrameFlavor::Frenet;
    frame.vectors.row(0) = p.tangent;
    frame.vectors.row(1) = p.normal1;
    frame.vectors.row(2) = p.binormal1;
    frame.vectors.row(3) = p.binormal2;
    return frame;
}

} // namespace

FrameSample gram_schmidt_frame(const JetVec4d& derivs, double s)
{
    const PointAnalysis p = analyze_point(derivs);
    if (p.level != 0) throw DegenerateFrameError(p.level, s, p.failing_residual);
    return frame_from(p, s);
}

FrenetField frenet_frames(const CurveSampling& samp)
{
    if (samp.s_jets.size() != samp.size())
        throw MismatchedSeriesError("sampling has no arclength jets");

    FrenetField field;
    field.frames.reserve(samp.size());
    field.degeneracy_level.reserve(samp.size());
    for (std::size_t j = 0; j < samp.size(); ++j) {
        const PointAnalysis p = analyze_point(samp.s_jets[j]);
        field.degeneracy_level.push_back(p.level);
        if (p.level == 0)
            field.frames.emplace_back(frame_from(p, samp.arclens[j]));
        else
            field.frames.emplace_back(std::nullopt);
    }
    return field;
}

std::vector<FrenetCurvatureSample> frenet_apparatus(const FrenetField& field,
                                                    const CurveSampling& samp)
{
    if (field.size() != samp.size() || samp.s_jets.size() != samp.size())
        throw MismatchedSeriesError("frame and derivative series differ in length");
    for (std::size_t j = 0; j < field.size(); ++j)
        if (field.frames[j] && std::abs(field.frames[j]->s - samp.arclens[j]) > 1e-12)
            throw MismatchedSeriesError("frame and derivative series disagree at sample " +
                                        std::to_string(j));

    std::vector<FrenetCurvatureSample> out;
    out.reserve(samp.size());
    for (std::size_t j = 0; j < samp.size(); ++j) {
        const PointAnalysis p = analyze_point(samp.s_jets[j]);
        FrenetCurvatureSample c;
        c.s = samp.arclens[j];
        c.kappa = p.kappa;
        c.tau = p.tau;
        c.sigma = p.sigma;
        c.tau_defined = p.tau_defined;
        c.sigma_defined = p.sigma_defined;
        out.push_back(c);
    }
    return out;
}

} // namespace curve4d

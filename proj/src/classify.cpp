#include "curve4d/classify.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace curve4d {

namespace {

constexpr double kSvCutoffRel = 1e-10;

/// Minimal-norm least-squares solution with a relative singular-value cutoff.
Eigen::VectorXd solve_min_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int& rank)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? kSvCutoffRel * sv[0] : 0.0;

    rank = 0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (int i = 0; i < sv.size(); ++i) {
        if (sv[i] > cutoff && sv[i] > 0.0) {
            inv[i] = 1.0 / sv[i];
            ++rank;
        }
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose() * b;
}

std::array<int, 2> active_columns(RelationMode mode, int& count)
{
    switch (mode) {
        case RelationMode::Spherical: count = 3; return {0, 0};
        case RelationMode::Rectifying: count = 2; return {1, 2};
        case RelationMode::Osculating: count = 2; return {0, 2};
    }
    count = 0;
    return {0, 0};
}

} // namespace

const char* name(RelationMode mode)
{
    switch (mode) {
        case RelationMode::Spherical: return "spherical";
        case RelationMode::Rectifying: return "rectifying";
        case RelationMode::Osculating: return "osculating";
    }
    return "?";
}

LinearRelationFit fit_linear_relation(const std::vector<PTCurvatureSample>& k, RelationMode mode)
{
    if (k.size() < 8) throw TooFewSamplesError(k.size(), 8);

    int cols = 0;
    const auto pattern = active_columns(mode, cols);
    const auto rows = static_cast<Eigen::Index>(k.size());

    Eigen::MatrixXd a(rows, cols);
    for (Eigen::Index j = 0; j < rows; ++j) {
        const Eigen::Vector3d kj = k[std::size_t(j)].k();
        if (mode == RelationMode::Spherical)
            a.row(j) = kj.transpose();
        else
            for (int c = 0; c < cols; ++c) a(j, c) = kj[pattern[std::size_t(c)]];
    }
    const Eigen::VectorXd b = Eigen::VectorXd::Constant(rows, -1.0);

    int rank = 0;
    const Eigen::VectorXd sol = solve_min_norm(a, b, rank);

    LinearRelationFit fit;
    fit.mode = mode;
    fit.rank_deficient = rank < cols;
    if (mode == RelationMode::Spherical)
        fit.coeffs = sol;
    else
        for (int c = 0; c < cols; ++c) fit.coeffs[pattern[std::size_t(c)]] = sol[c];
    fit.rms_residual = std::sqrt((a * sol - b).squaredNorm() / double(rows));
    const double cnorm = fit.coeffs.norm();
    if (cnorm > 0.0) fit.plane_distance = 1.0 / cnorm;
    return fit;
}

SphereFit fit_sphere_direct(const CurveSampling& samp)
{
    const auto rows = static_cast<Eigen::Index>(samp.size());
    if (rows < 6) throw TooFewSamplesError(samp.size(), 6);

    Eigen::MatrixXd a(rows, 5);
    Eigen::VectorXd b(rows);
    for (Eigen::Index j = 0; j < rows; ++j) {
        const Eigen::Vector4d x = samp.jets[std::size_t(j)].value();
        a.block<1, 4>(j, 0) = 2.0 * x.transpose();
        a(j, 4) = 1.0;
        b[j] = x.squaredNorm();
    }

    int rank = 0;
    const Eigen::VectorXd sol = solve_min_norm(a, b, rank);
    if (rank < 3)
        throw DegenerateGeometryError("points carry no curvature (design rank " +
                                      std::to_string(rank) + ")");

    SphereFit fit;
    fit.center = sol.head<4>();
    const double r_sq = sol[4] + fit.center.squaredNorm();
    if (!(r_sq > 0.0)) throw DegenerateGeometryError("fitted squared radius is not positive");
    fit.radius = std::sqrt(r_sq);

    double acc = 0.0;
    for (Eigen::Index j = 0; j < rows; ++j) {
        const double d = (samp.jets[std::size_t(j)].value() - fit.center).norm() - fit.radius;
        acc += d * d;
    }
    fit.rms_residual = std::sqrt(acc / double(rows));
    return fit;
}

ClassificationReport classify_curve(const CurveSampling& samp,
                                    const std::vector<FrameSample>& frames,
                                    const std::vector<PTCurvatureSample>& k,
                                    const ClassifyTolerances& tol)
{
    if (frames.size() != samp.size() || k.size() != samp.size())
        throw MismatchedSeriesError("classification inputs differ in length");

    ClassificationReport report;
    report.fit_spherical = fit_linear_relation(k, RelationMode::Spherical);
    report.fit_rectifying = fit_linear_relation(k, RelationMode::Rectifying);
    report.fit_osculating = fit_linear_relation(k, RelationMode::Osculating);

    double k_sq = 0.0;
    for (const auto& kj : k) k_sq += kj.k().squaredNorm();
    const double k_rms = std::sqrt(k_sq / double(k.size()));
    const double threshold = tol.relation_tol * (1.0 + k_rms);

    report.spherical = report.fit_spherical.rms_residual <= threshold;
    report.normal = report.spherical; // normal <=> spherical
    report.rectifying = report.fit_rectifying.rms_residual <= threshold;
    report.osculating = report.fit_osculating.rms_residual <= threshold;

    double drift = 0.0;
    bool any_anchor = false;

    if (report.spherical || report.fit_spherical.rank_deficient) {
        try {
            const SphereFit sphere = fit_sphere_direct(samp);
            report.sphere = sphere;

            // Anchors a, b, c = <alpha - P, M_i> fixed at the first sample;
            // for a true sphere they are constant along the curve and satisfy
            // r^2 = a^2 + b^2 + c^2.
            Eigen::Vector3d anchor;
            const Eigen::Vector4d first = samp.jets[0].value() - sphere.center;
            for (int i = 0; i < 3; ++i) anchor[i] = first.dot(frames[0].normal(i));

            for (std::size_t j = 0; j < samp.size(); ++j) {
                const Eigen::Vector4d rel = samp.jets[j].value() - sphere.center;
                for (int i = 0; i < 3; ++i)
                    drift = std::max(drift, std::abs(rel.dot(frames[j].normal(i)) - anchor[i]));
            }
            any_anchor = true;
            report.radius_identity_gap =
                std::abs(sphere.radius * sphere.radius - anchor.squaredNorm());
        } catch (const DegenerateGeometryError&) {
            // Relation verdicts stand; the sphere cross-checks are simply
            // not applicable.
        }
    }

    auto x_drift = [&](const Eigen::Vector3d& coeffs) {
        Eigen::Vector4d x0 = Eigen::Vector4d::Zero();
        double worst = 0.0;
        for (std::size_t j = 0; j < samp.size(); ++j) {
            Eigen::Vector4d x = samp.jets[j].value();
            for (int i = 0; i < 3; ++i) x -= coeffs[i] * Eigen::Vector4d(frames[j].normal(i));
            if (j == 0)
                x0 = x;
            else
                worst = std::max(worst, (x - x0).norm());
        }
        return worst;
    };

    if (report.rectifying) {
        drift = std::max(drift, x_drift(report.fit_rectifying.coeffs));
        any_anchor = true;
    }
    if (report.osculating) {
        drift = std::max(drift, x_drift(report.fit_osculating.coeffs));
        any_anchor = true;
    }

    if (any_anchor) report.anchor_constancy = drift;
    return report;
}

} // namespace curve4d

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/LU>

#include "curve4d/parallel.hpp"
#include "test_support.hpp"

using namespace curve4d;

namespace {

FrameSample make_frame(const Eigen::Vector4d& t, const Eigen::Vector4d& m1,
                       const Eigen::Vector4d& m2, const Eigen::Vector4d& m3)
{
    FrameSample f;
    f.flavor = FrameFlavor::ParallelTransport;
    f.vectors.row(0) = t;
    f.vectors.row(1) = m1;
    f.vectors.row(2) = m2;
    f.vectors.row(3) = m3;
    return f;
}

double max_defect(const std::vector<FrameSample>& frames)
{
    double worst = 0.0;
    for (const auto& f : frames) worst = std::max(worst, f.orthonormality_defect());
    return worst;
}

/// Evaluates the position at arclength `s` from the nearest sample's jet by
/// a fourth-order Taylor step; resolves points between grid nodes.
Eigen::Vector4d position_at(const CurveSampling& samp, double s)
{
    std::size_t best = 0;
    for (std::size_t j = 1; j < samp.size(); ++j)
        if (std::abs(samp.arclens[j] - s) < std::abs(samp.arclens[best] - s)) best = j;
    const double ds = s - samp.arclens[best];
    Eigen::Vector4d acc = Eigen::Vector4d::Zero();
    double coeff = 1.0;
    for (int n = 0; n <= 4; ++n) {
        if (n > 0) coeff *= ds / double(n);
        acc += coeff * samp.s_jets[best].derivative(n);
    }
    return acc;
}

} // namespace

TEST_CASE("init_pt_frame: pivoted completion and hints")
{
    // axis tangent: the standard basis comes back
    const FrameSample id = init_pt_frame(Eigen::Vector4d::Unit(0));
    CHECK((id.vectors - Eigen::Matrix4d::Identity()).norm() == doctest::Approx(0.0).scale(1.0));

    // diagonal tangent in the x1-x3 plane
    const double r2 = std::sqrt(2.0);
    const Eigen::Vector4d t0(1.0 / r2, 0.0, 1.0 / r2, 0.0);
    const FrameSample f = init_pt_frame(t0);
    CHECK((f.normal(0) - Eigen::Vector4d::Unit(1)).norm() <= 1e-12);
    CHECK((f.normal(1) - Eigen::Vector4d(1.0 / r2, 0.0, -1.0 / r2, 0.0)).norm() <= 1e-12);
    CHECK(std::abs(std::abs(f.normal(2)[3]) - 1.0) <= 1e-12); // M3 = +-e4
    CHECK(f.vectors.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.orthonormality_defect() <= 1e-12);

    // Frenet hint fixes the gauge
    const CurveSampling ex2 = sample_arclength(builtin_curve("example2"), 65);
    const FrameSample hint = gram_schmidt_frame(ex2.s_jets[0], 0.0);
    const FrameSample hinted = init_pt_frame(hint.tangent(), hint);
    const double r3 = std::sqrt(3.0);
    CHECK((hinted.normal(0) - Eigen::Vector4d(0.0, -1.0 / r3, 0.0, -r2 / r3)).norm() <= 1e-12);
    CHECK(hinted.flavor == FrameFlavor::ParallelTransport);

    CHECK_THROWS_AS(init_pt_frame(Eigen::Vector4d(1, 1, 0, 0)), NotUnitError);
    CHECK_THROWS_AS(init_pt_frame(Eigen::Vector4d::Unit(1), hint), HintMismatchError);
}

TEST_CASE("a line transports any frame unchanged")
{
    const CurveSampling samp =
        sample_arclength(with_domain(builtin_curve("line"), {0.0, 3.0}), 33);
    const FrameSample frame0 = init_pt_frame(Eigen::Vector4d::Unit(0));
    for (auto method : {PropagationMethod::Rk4, PropagationMethod::DoubleReflection}) {
        const auto frames = propagate_pt(samp, frame0, method);
        REQUIRE(frames.size() == samp.size());
        for (const auto& f : frames)
            CHECK((f.vectors - frame0.vectors).cwiseAbs().maxCoeff() <= 1e-12);

        for (const auto& k : pt_curvatures(samp, frames)) {
            CHECK(std::abs(k.k1) <= 1e-12);
            CHECK(std::abs(k.k2) <= 1e-12);
            CHECK(std::abs(k.k3) <= 1e-12);
        }
    }
}

TEST_CASE("circle: the principal normal is relatively parallel")
{
    const CurveSampling samp = sample_arclength(builtin_curve("circle"), 257);

    // Frenet never completes for a plane curve, so hint the normal triple by
    // hand: N = -(cos s, sin s, 0, 0), completed by e3 and e4.
    const FrameSample frame0 = make_frame(Eigen::Vector4d(0, 1, 0, 0),
                                          Eigen::Vector4d(-1, 0, 0, 0),
                                          Eigen::Vector4d(0, 0, 1, 0),
                                          Eigen::Vector4d(0, 0, 0, 1));
    REQUIRE(frame0.vectors.determinant() == doctest::Approx(1.0));

    for (auto method : {PropagationMethod::Rk4, PropagationMethod::DoubleReflection}) {
        const auto frames = propagate_pt(samp, frame0, method);
        for (std::size_t j = 0; j < frames.size(); ++j) {
            const double s = samp.arclens[j];
            const Eigen::Vector4d n(-std::cos(s), -std::sin(s), 0.0, 0.0);
            CHECK((frames[j].normal(0) - n).norm() <= 1e-6);
            CHECK((frames[j].normal(1) - Eigen::Vector4d(0, 0, 1, 0)).norm() <= 1e-9);
            CHECK((frames[j].normal(2) - Eigen::Vector4d(0, 0, 0, 1)).norm() <= 1e-9);
        }

        const auto k = pt_curvatures(samp, frames);
        for (const auto& kj : k) {
            CHECK(kj.k1 == doctest::Approx(1.0).epsilon(1e-6));
            CHECK(std::abs(kj.k2) <= 1e-6);
            CHECK(std::abs(kj.k3) <= 1e-6);
        }
    }
}

TEST_CASE("example1: propagation crosses the Frenet-degenerate point")
{
    const CurveSampling samp = sample_arclength(builtin_curve("example1"), 201);
    const FrameSample frame0 = init_pt_frame(samp.s_jets[0].derivative(1));
    for (auto method : {PropagationMethod::Rk4, PropagationMethod::DoubleReflection}) {
        const auto frames = propagate_pt(samp, frame0, method);
        CHECK(max_defect(frames) <= 1e-8);
    }
}

TEST_CASE("example2: curvature magnitude identity")
{
    const CurveSampling samp = sample_arclength(builtin_curve("example2"), 257);
    const auto frames =
        propagate_pt(samp, init_pt_frame(samp.s_jets[0].derivative(1)), PropagationMethod::Rk4);
    for (const auto& k : pt_curvatures(samp, frames))
        CHECK(k.k().squaredNorm() == doctest::Approx(0.75).epsilon(1e-8));
}

TEST_CASE("kappa equals |k| across the corpus")
{
    auto specs = curve4d::testing::random_trig_curves(13);
    for (const char* name : {"example1", "example2", "circle", "helix3"})
        specs.push_back(builtin_curve(name));

    for (const CurveSpec& spec : specs) {
        const CurveSampling samp = sample_arclength(spec, 257);
        const FrameSample frame0 = init_pt_frame(samp.s_jets[0].derivative(1).normalized());
        for (auto method : {PropagationMethod::Rk4, PropagationMethod::DoubleReflection}) {
            const auto frames = propagate_pt(samp, frame0, method);
            const auto k = pt_curvatures(samp, frames);
            for (std::size_t j = 0; j < samp.size(); ++j) {
                const double kappa = samp.s_jets[j].derivative(2).norm();
                CAPTURE(spec.label);
                CHECK(std::abs(k[j].k().norm() - kappa) <= 1e-6);
            }
        }
    }
}

TEST_CASE("relative parallelism of the transported normals")
{
    std::vector<CurveSpec> specs{builtin_curve("example2"), builtin_curve("helix3")};
    auto random = curve4d::testing::random_trig_curves(47);
    specs.push_back(random[0]);

    for (const CurveSpec& spec : specs) {
        const CurveSampling samp = sample_arclength(spec, 2049);
        const auto frames = propagate_pt(
            samp, init_pt_frame(samp.s_jets[0].derivative(1).normalized()),
            PropagationMethod::Rk4);
        CHECK(max_defect(frames) <= 1e-9);

        // 5-point differentiation: the O(h^2) truncation of a plain central
        // difference would not resolve the 1e-8 floor where a k_i vanishes
        for (std::size_t j = 2; j + 2 < samp.size(); ++j) {
            std::array<double, 5> nodes;
            for (std::size_t m = 0; m < 5; ++m) nodes[m] = samp.arclens[j - 2 + m];
            const auto w = curve4d::testing::lagrange_derivative_weights(nodes, 2);
            for (int i = 0; i < 3; ++i) {
                Eigen::Vector4d dm = Eigen::Vector4d::Zero();
                for (std::size_t m = 0; m < 5; ++m)
                    dm += w[m] * Eigen::Vector4d(frames[j - 2 + m].normal(i));
                for (int l = 0; l < 3; ++l) {
                    CAPTURE(spec.label);
                    CHECK(std::abs(dm.dot(frames[j].normal(l))) <= 1e-4 * dm.norm() + 1e-8);
                }
            }
        }
    }
}

TEST_CASE("Bishop reduction: curves in the x4 = 0 hyperplane")
{
    for (const char* name : {"helix3", "circle"}) {
        const CurveSampling samp = sample_arclength(builtin_curve(name), 257);
        FrameSample frame0 = init_pt_frame(samp.s_jets[0].derivative(1).normalized());
        // pin M3 = +e4 (flip a pair of rows if needed to keep det = +1)
        if (frame0.normal(2)[3] < 0.0) {
            frame0.vectors.row(3) = -frame0.vectors.row(3);
            frame0.vectors.row(2) = -frame0.vectors.row(2);
        }
        REQUIRE((frame0.normal(2) - Eigen::Vector4d::Unit(3)).norm() <= 1e-12);

        for (auto method : {PropagationMethod::Rk4, PropagationMethod::DoubleReflection}) {
            const auto frames = propagate_pt(samp, frame0, method);
            const auto k = pt_curvatures(samp, frames);
            for (std::size_t j = 0; j < samp.size(); ++j) {
                CHECK(std::abs(k[j].k3) <= 1e-9);
                CHECK((frames[j].normal(2) - Eigen::Vector4d::Unit(3)).norm() <= 1e-8);
            }
        }
    }
}

TEST_CASE("synthesize: zero profile gives a straight line")
{
    const KProfile profile = parse_kprofile("0, 0, 0", {0.0, 2.0});
    const auto result = synthesize_curve(profile, init_pt_frame(Eigen::Vector4d::Unit(0)),
                                         Eigen::Vector4d::Zero(), 0.01, 200);
    REQUIRE(result.sampling.size() == 201);
    for (std::size_t j = 0; j < result.sampling.size(); ++j) {
        const double s = result.sampling.arclens[j];
        CHECK((result.sampling.jets[j].value() - s * Eigen::Vector4d::Unit(0)).norm() <= 1e-12);
    }
}

TEST_CASE("synthesize: constant k1 = 1 closes into a unit circle")
{
    const KProfile profile = parse_kprofile("1, 0, 0", {0.0, 6.3});
    const Eigen::Vector4d origin(0.0, -1.0, 0.0, 0.0);
    const auto result = synthesize_curve(profile, init_pt_frame(Eigen::Vector4d::Unit(0)), origin,
                                         1e-3, 6284);

    // The grid does not land on s = 2 pi; evaluate there through the jets.
    const double two_pi = 2.0 * 3.14159265358979323846;
    CHECK((position_at(result.sampling, two_pi) - origin).norm() <= 1e-6);

    // unit speed by construction
    for (const auto& jet : result.sampling.s_jets)
        CHECK(std::abs(jet.derivative(1).norm() - 1.0) <= 1e-8);
}

TEST_CASE("synthesize / pt_curvatures round trip")
{
    // the rectifying test profile: k2 + k3 = 2 with c2 = c3 = -1/2
    const KProfile profile = parse_kprofile("0.3, 1 + sin(s), 1 - sin(s)", {0.0, 5.0});
    FrameSample frame0 = init_pt_frame(Eigen::Vector4d::Unit(0));
    Eigen::Vector4d origin = -0.5 * Eigen::Vector4d(frame0.normal(1)) -
                             0.5 * Eigen::Vector4d(frame0.normal(2));
    const auto result = synthesize_curve(profile, frame0, origin, 1e-3, 5000);

    const auto k = pt_curvatures(result.sampling, result.frames);
    for (std::size_t j = 0; j < k.size(); ++j) {
        const double s = result.sampling.arclens[j];
        CHECK(std::abs(k[j].k1 - 0.3) <= 1e-5);
        CHECK(std::abs(k[j].k2 - (1.0 + std::sin(s))) <= 1e-5);
        CHECK(std::abs(k[j].k3 - (1.0 - std::sin(s))) <= 1e-5);
    }

    // the synthesized order-3/4 jet entries must differentiate the order
    // below them (checked against central differences of the stored series)
    const auto& samp = result.sampling;
    for (std::size_t j = 1; j + 1 < samp.size(); j += 7) {
        const double h2 = samp.arclens[j + 1] - samp.arclens[j - 1];
        const Eigen::Vector4d d3_fd =
            (samp.s_jets[j + 1].derivative(2) - samp.s_jets[j - 1].derivative(2)) / h2;
        const Eigen::Vector4d d4_fd =
            (samp.s_jets[j + 1].derivative(3) - samp.s_jets[j - 1].derivative(3)) / h2;
        CHECK((d3_fd - samp.s_jets[j].derivative(3)).norm() <= 1e-4);
        CHECK((d4_fd - samp.s_jets[j].derivative(4)).norm() <= 1e-4);
    }
}

TEST_CASE("synthesize respects the profile domain")
{
    const KProfile profile = parse_kprofile("1, 0, 0", {0.0, 1.0});
    CHECK_THROWS_AS(synthesize_curve(profile, init_pt_frame(Eigen::Vector4d::Unit(0)),
                                     Eigen::Vector4d::Zero(), 1e-3, 2000),
                    ProfileDomainError);
}

TEST_CASE("propagation input validation")
{
    const CurveSampling samp = sample_arclength(builtin_curve("example2"), 65);
    CHECK_THROWS_AS(
        propagate_pt(samp, init_pt_frame(Eigen::Vector4d::Unit(1)), PropagationMethod::Rk4),
        HintMismatchError);

    const auto frames =
        propagate_pt(samp, init_pt_frame(samp.s_jets[0].derivative(1)), PropagationMethod::Rk4);
    const CurveSampling other = sample_arclength(builtin_curve("example2"), 129);
    CHECK_THROWS_AS(pt_curvatures(other, frames), MismatchedSeriesError);
}

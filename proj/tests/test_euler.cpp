#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/LU>

#include "curve4d/euler.hpp"
#include "curve4d/pipeline.hpp"
#include "test_support.hpp"

using namespace curve4d;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::pair<CurveSampling, std::vector<FrameSample>> hinted_pipeline(const char* name, int n)
{
    CurveSampling samp = sample_arclength(builtin_curve(name), n);
    auto frames = default_pt_frames(samp, PropagationMethod::Rk4);
    return {std::move(samp), std::move(frames)};
}

} // namespace

TEST_CASE("rotation between Frenet and hinted parallel frames starts at identity")
{
    const auto [samp, frames] = hinted_pipeline("example2", 65);
    const FrameSample frenet0 = gram_schmidt_frame(samp.s_jets[0], samp.arclens[0]);
    const Eigen::Matrix3d r = frame_rotation_matrix(frenet0, frames[0]);
    CHECK((r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-12);

    const EulerAngles a = extract_euler_angles(r);
    CHECK(std::abs(a.theta) <= 1e-9);
    CHECK(std::abs(a.phi) <= 1e-9);
    CHECK(std::abs(a.psi) <= 1e-9);
}

TEST_CASE("rotation matrices are in SO(3) along whole curves")
{
    for (const char* name : {"example2", "helix3"}) {
        const auto [samp, frames] = hinted_pipeline(name, 257);
        const FrenetField field = frenet_frames(samp);
        for (std::size_t j = 0; j < samp.size(); ++j) {
            REQUIRE(field.frames[j].has_value());
            const Eigen::Matrix3d r = frame_rotation_matrix(*field.frames[j], frames[j]);
            CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-8);
            CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("helix3: the frames rotate by psi = -tau s in the (M1, M2) plane")
{
    const auto [samp, frames] = hinted_pipeline("helix3", 257);
    const FrenetField field = frenet_frames(samp);
    const auto angles = euler_angle_series(field, frames);

    for (std::size_t j = 0; j < samp.size(); ++j) {
        REQUIRE(angles[j].angles.has_value());
        const EulerAngles& a = *angles[j].angles;
        const double s = samp.arclens[j];
        // wrap -s/2 into (-pi, pi]
        double want = -0.5 * s;
        while (want <= -kPi) want += 2.0 * kPi;
        CHECK(std::abs(a.theta) <= 1e-7);
        CHECK(std::abs(a.phi) <= 1e-7);
        CHECK(a.psi == doctest::Approx(want).epsilon(1e-6).scale(1.0));
    }

    // at arclength pi the rotation reaches -pi/2 and k = (0, 1/2)
    std::size_t at_pi = 0;
    for (std::size_t j = 0; j < samp.size(); ++j)
        if (std::abs(samp.arclens[j] - kPi) < std::abs(samp.arclens[at_pi] - kPi)) at_pi = j;
    const auto k = pt_curvatures(samp, frames);
    const double ds = samp.arclens[at_pi] - kPi;
    CHECK(std::abs(angles[at_pi].angles->psi + kPi / 2.0) <= 0.5 * std::abs(ds) + 1e-6);
    CHECK(std::abs(k[at_pi].k1) <= 0.3 * std::abs(ds) + 1e-6);
    CHECK(k[at_pi].k2 == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("tangent mismatch is rejected")
{
    const auto [samp, frames] = hinted_pipeline("example2", 65);
    const FrameSample f0 = gram_schmidt_frame(samp.s_jets[0], samp.arclens[0]);
    CHECK_THROWS_AS(frame_rotation_matrix(f0, frames[10]), TangentMismatchError);
}

TEST_CASE("euler extraction: axis cases and gimbal lock")
{
    CHECK(extract_euler_angles(Eigen::Matrix3d::Identity()).theta == 0.0);
    CHECK(extract_euler_angles(Eigen::Matrix3d::Identity()).gimbal == false);

    // rotation by pi/3 in the plane of the first two normal directions
    EulerAngles zrot;
    zrot.psi = kPi / 3.0;
    const EulerAngles got = extract_euler_angles(euler_rotation_matrix(zrot));
    CHECK(got.theta == doctest::Approx(0.0).scale(1.0));
    CHECK(got.phi == doctest::Approx(0.0).scale(1.0));
    CHECK(got.psi == doctest::Approx(kPi / 3.0));

    // gimbal lock: R[2][0] = -1 forces theta = pi/2, phi := 0
    EulerAngles locked;
    locked.theta = kPi / 2.0;
    locked.phi = 0.7;
    locked.psi = 0.3;
    const Eigen::Matrix3d r = euler_rotation_matrix(locked);
    CHECK(r(2, 0) == doctest::Approx(-1.0));
    const EulerAngles g = extract_euler_angles(r);
    CHECK(g.gimbal);
    CHECK(g.phi == 0.0);
    CHECK(g.theta == doctest::Approx(kPi / 2.0));
    // reconstruction still reproduces the matrix: psi absorbed phi
    CHECK((euler_rotation_matrix(g) - r).cwiseAbs().maxCoeff() <= 1e-8);

    Eigen::Matrix3d not_rot = Eigen::Matrix3d::Identity();
    not_rot(0, 0) = 2.0;
    CHECK_THROWS_AS(extract_euler_angles(not_rot), NotRotationError);
    Eigen::Matrix3d mirror = Eigen::Matrix3d::Identity();
    mirror(2, 2) = -1.0;
    CHECK_THROWS_AS(extract_euler_angles(mirror), NotRotationError);
}

TEST_CASE("roundtrip on 1000 random rotations off gimbal")
{
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> utheta(-kPi / 2.0 + 2e-3, kPi / 2.0 - 2e-3);
    std::uniform_real_distribution<double> uangle(-kPi + 1e-9, kPi);
    for (int trial = 0; trial < 1000; ++trial) {
        EulerAngles a;
        a.theta = utheta(rng);
        a.phi = uangle(rng);
        a.psi = uangle(rng);
        const EulerAngles b = extract_euler_angles(euler_rotation_matrix(a));
        CAPTURE(trial);
        CHECK(std::abs(b.theta - a.theta) <= 1e-8);
        CHECK(std::abs(b.phi - a.phi) <= 1e-8);
        CHECK(std::abs(b.psi - a.psi) <= 1e-8);
        CHECK_FALSE(b.gimbal);
    }
}

TEST_CASE("Euler-angle curvature formulas hold as residuals along curves")
{
    auto specs = curve4d::testing::random_trig_curves(71);
    specs.push_back(builtin_curve("example2"));
    specs.push_back(builtin_curve("helix3"));

    for (const CurveSpec& spec : specs) {
        const CurveSampling samp = sample_arclength(spec, 257);
        const auto frames = default_pt_frames(samp, PropagationMethod::Rk4);
        const auto k = pt_curvatures(samp, frames);
        const FrenetField field = frenet_frames(samp);
        const auto curv = frenet_apparatus(field, samp);
        const auto angles = euler_angle_series(field, frames);

        for (std::size_t j = 0; j < samp.size(); ++j) {
            if (!angles[j].angles || angles[j].angles->gimbal) continue;
            const auto res = curvature_relation_residuals(curv[j].kappa, *angles[j].angles, k[j]);
            const double bound = 1e-6 * std::max(curv[j].kappa, 1.0);
            CAPTURE(spec.label);
            CHECK(std::abs(*res.r_k1) <= bound);
            CHECK(std::abs(*res.r_k2) <= bound);
            CHECK(std::abs(*res.r_k3) <= bound);
        }
    }
}

TEST_CASE("kappa = 0 leaves the raw k as residual")
{
    PTCurvatureSample k;
    k.k1 = 0.25;
    const auto res = curvature_relation_residuals(0.0, EulerAngles{}, k);
    CHECK(*res.r_k1 == doctest::Approx(0.25));
    CHECK(*res.r_k2 == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("angle ODE residuals on helix3")
{
    const auto [samp, frames] = hinted_pipeline("helix3", 513);
    const FrenetField field = frenet_frames(samp);
    const auto curv = frenet_apparatus(field, samp);
    const auto angles = euler_angle_series(field, frames);
    const auto ode = angle_ode_residuals(angles, curv);

    int tau_checked = 0;
    for (std::size_t j = 1; j + 1 < samp.size(); ++j) {
        // sigma = 0 and theta = const 0, so r_theta vanishes
        REQUIRE(ode[j].r_theta.has_value());
        CHECK(std::abs(*ode[j].r_theta) <= 1e-5);
        // tau = -psi' exactly (psi is linear in s)
        REQUIRE(ode[j].r_tau.has_value());
        CHECK(std::abs(*ode[j].r_tau) <= 1e-5);
        ++tau_checked;
        // r_sigma and r_constraint are masked near sin(psi) = 0 but must be
        // small wherever defined
        if (ode[j].r_sigma) CHECK(std::abs(*ode[j].r_sigma) <= 1e-4);
        if (ode[j].r_constraint) CHECK(std::abs(*ode[j].r_constraint) <= 1e-4);
    }
    CHECK(tau_checked > 0);
}

TEST_CASE("angle ODE residuals are all not-applicable on a line")
{
    const CurveSampling samp =
        sample_arclength(with_domain(builtin_curve("line"), {0.0, 2.0}), 33);
    const auto frames = default_pt_frames(samp, PropagationMethod::Rk4);
    const FrenetField field = frenet_frames(samp);
    const auto angles = euler_angle_series(field, frames);
    const auto ode = angle_ode_residuals(angles, frenet_apparatus(field, samp));
    for (const auto& r : ode) {
        CHECK_FALSE(r.r_theta.has_value());
        CHECK_FALSE(r.r_tau.has_value());
        CHECK_FALSE(r.r_sigma.has_value());
        CHECK_FALSE(r.r_constraint.has_value());
    }
}

TEST_CASE("angle ODE residuals on a generic synthesized curve stay finite")
{
    const KProfile profile =
        parse_kprofile("0.8 + 0.2*sin(s), 0.5 + 0.3*cos(s), 0.6 - 0.2*sin(s)", {0.0, 4.0});
    const auto synth = synthesize_curve(profile, init_pt_frame(Eigen::Vector4d::Unit(0)),
                                        Eigen::Vector4d::Zero(), 1e-3, 4000);
    const FrenetField field = frenet_frames(synth.sampling);
    const auto curv = frenet_apparatus(field, synth.sampling);
    const auto angles = euler_angle_series(field, synth.frames);
    const auto ode = angle_ode_residuals(angles, curv);

    int reported = 0;
    for (const auto& r : ode) {
        for (const auto& v : {r.r_theta, r.r_tau, r.r_sigma, r.r_constraint}) {
            if (v) {
                CHECK(std::isfinite(*v));
                ++reported;
            }
        }
    }
    CHECK(reported > 100); // diagnostics actually get reported
}

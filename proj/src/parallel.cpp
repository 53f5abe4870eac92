#include "curve4d/parallel.hpp"

#include <Eigen/LU>

#include <cmath>

namespace curve4d {

namespace {

constexpr double kUnitTol = 1e-9;

/// Gram-Schmidt of the normal rows against a fixed tangent (kept exact) and
/// against each other. Drift lives in the normals; the tangent is data.
void reorthonormalize(Eigen::Matrix4d& frame)
{
    for (int i = 1; i < 4; ++i) {
        Eigen::Vector4d v = frame.row(i);
        for (int j = 0; j < i; ++j) {
            const Eigen::Vector4d prev = frame.row(j);
            v -= v.dot(prev) * prev;
        }
        frame.row(i) = v.normalized();
    }
}

Eigen::Vector4d reflect(const Eigen::Vector4d& v, const Eigen::Vector4d& plane_normal,
                        double normal_sq)
{
    return v - (2.0 * v.dot(plane_normal) / normal_sq) * plane_normal;
}

/// Taylor value of the order-`base` arclength derivative at offset `ds` from
/// sample j, averaged with the expansion from sample j+1 at offset `ds - h`.
/// Used for the RK4 stage evaluations between grid points.
Eigen::Vector4d blend_between(const JetVec4d& left, const JetVec4d& right, int base, double ds,
                              double h)
{
    auto taylor = [base](const JetVec4d& jet, double u) {
        Eigen::Vector4d acc = Eigen::Vector4d::Zero();
        double coeff = 1.0;
        for (int k = 0; base + k <= Jet4d::kOrder; ++k) {
            if (k > 0) coeff *= u / double(k);
            acc += coeff * jet.derivative(base + k);
        }
        return acc;
    };
    return 0.5 * (taylor(left, ds) + taylor(right, ds - h));
}

std::vector<FrameSample> propagate_rk4(const CurveSampling& samp, const FrameSample& frame0)
{
    std::vector<FrameSample> out;
    out.reserve(samp.size());

    FrameSample cur = frame0;
    cur.s = samp.arclens[0];
    cur.flavor = FrameFlavor::ParallelTransport;
    cur.vectors.row(0) = samp.s_jets[0].derivative(1).normalized();
    reorthonormalize(cur.vectors);
    out.push_back(cur);

    for (std::size_t j = 0; j + 1 < samp.size(); ++j) {
        const double h = samp.arclens[j + 1] - samp.arclens[j];
        if (!(h > 1e-15)) throw ZeroStepError(j, samp.params[j]);

        const JetVec4d& left = samp.s_jets[j];
        const JetVec4d& right = samp.s_jets[j + 1];
        const Eigen::Vector4d t0 = left.derivative(1);
        const Eigen::Vector4d a0 = left.derivative(2);
        const Eigen::Vector4d tm = blend_between(left, right, 1, 0.5 * h, h);
        const Eigen::Vector4d am = blend_between(left, right, 2, 0.5 * h, h);
        const Eigen::Vector4d t1 = right.derivative(1);
        const Eigen::Vector4d a1 = right.derivative(2);

        // M' = -<alpha''(s), M> T(s), three normals at once.
        auto slope = [](const Eigen::Vector4d& tangent, const Eigen::Vector4d& accel,
                        const Eigen::Matrix4d& state) {
            Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
            for (int i = 1; i < 4; ++i)
                k.row(i) = -state.row(i).dot(accel) * tangent;
            return k;
        };

        const Eigen::Matrix4d& y = cur.vectors;
        const Eigen::Matrix4d k1 = slope(t0, a0, y);
        const Eigen::Matrix4d k2 = slope(tm, am, y + 0.5 * h * k1);
        const Eigen::Matrix4d k3 = slope(tm, am, y + 0.5 * h * k2);
        const Eigen::Matrix4d k4 = slope(t1, a1, y + h * k3);

        FrameSample next;
        next.s = samp.arclens[j + 1];
        next.flavor = FrameFlavor::ParallelTransport;
        next.vectors = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        next.vectors.row(0) = t1.normalized();
        reorthonormalize(next.vectors);
        out.push_back(next);
        cur = next;
    }
    return out;
}

std::vector<FrameSample> propagate_double_reflection(const CurveSampling& samp,
                                                     const FrameSample& frame0)
{
    std::vector<FrameSample> out;
    out.reserve(samp.size());

    FrameSample cur = frame0;
    cur.s = samp.arclens[0];
    cur.flavor = FrameFlavor::ParallelTransport;
    cur.vectors.row(0) = samp.s_jets[0].derivative(1).normalized();
    reorthonormalize(cur.vectors);
    out.push_back(cur);

    for (std::size_t j = 0; j + 1 < samp.size(); ++j) {
        const Eigen::Vector4d x0 = samp.s_jets[j].derivative(0);
        const Eigen::Vector4d x1 = samp.s_jets[j + 1].derivative(0);
        const Eigen::Vector4d chord = x1 - x0;
        const double chord_sq = chord.squaredNorm();
        if (!(chord_sq > 0.0)) throw ZeroStepError(j, samp.params[j]);

        const Eigen::Vector4d t1 = samp.s_jets[j + 1].derivative(1).normalized();

        // First reflection: across the hyperplane normal to the chord.
        Eigen::Matrix4d refl;
        for (int i = 0; i < 4; ++i)
            refl.row(i) = reflect(cur.vectors.row(i), chord, chord_sq);

        // Second reflection: across the hyperplane normal to t1 - reflected T,
        // which maps the reflected tangent onto t1 exactly.
        const Eigen::Vector4d v2 = t1 - Eigen::Vector4d(refl.row(0));
        const double v2_sq = v2.squaredNorm();
        if (v2_sq > 1e-28) {
            for (int i = 0; i < 4; ++i) refl.row(i) = reflect(refl.row(i), v2, v2_sq);
        }

        FrameSample next;
        next.s = samp.arclens[j + 1];
        next.flavor = FrameFlavor::ParallelTransport;
        next.vectors = refl;
        next.vectors.row(0) = t1;
        reorthonormalize(next.vectors);
        out.push_back(next);
        cur = next;
    }
    return out;
}

} // namespace

FrameSample init_pt_frame(const Eigen::Vector4d& tangent, const std::optional<FrameSample>& hint)
{
    const double tnorm = tangent.norm();
    if (std::abs(tnorm - 1.0) > kUnitTol) throw NotUnitError(tnorm);

    FrameSample frame;
    frame.flavor = FrameFlavor::ParallelTransport;

    if (hint) {
        const double dev = (hint->tangent() - tangent).norm();
        if (dev > kUnitTol) throw HintMismatchError(dev);
        frame = *hint;
        frame.flavor = FrameFlavor::ParallelTransport;
        return frame;
    }

    frame.vectors.row(0) = tangent;
    int pivot = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(tangent[i]) < std::abs(tangent[pivot])) pivot = i;

    int row = 1;
    auto try_axis = [&](int axis) {
        if (row == 4) return;
        Eigen::Vector4d v = Eigen::Vector4d::Unit(axis);
        for (int i = 0; i < row; ++i) {
            const Eigen::Vector4d prev = frame.vectors.row(i);
            v -= v.dot(prev) * prev;
        }
        if (v.norm() < 1e-8) return; // axis already spanned, move on
        frame.vectors.row(row++) = v.normalized();
    };
    try_axis(pivot);
    for (int axis = 0; axis < 4; ++axis)
        if (axis != pivot) try_axis(axis);

    if (frame.vectors.determinant() < 0.0) frame.vectors.row(3) = -frame.vectors.row(3);
    return frame;
}

std::vector<FrameSample> propagate_pt(const CurveSampling& samp, const FrameSample& frame0,
                                      PropagationMethod method)
{
    if (samp.s_jets.size() != samp.size())
        throw MismatchedSeriesError("sampling has no arclength jets");
    const Eigen::Vector4d t0 = samp.s_jets[0].derivative(1).normalized();
    const double dev = (frame0.tangent() - t0).norm();
    if (dev > 1e-8) throw HintMismatchError(dev);

    return method == PropagationMethod::Rk4 ? propagate_rk4(samp, frame0)
                                            : propagate_double_reflection(samp, frame0);
}

std::vector<PTCurvatureSample> pt_curvatures(const CurveSampling& samp,
                                             const std::vector<FrameSample>& frames)
{
    if (frames.size() != samp.size() || samp.s_jets.size() != samp.size())
        throw MismatchedSeriesError("frame series does not match the sampling");

    std::vector<PTCurvatureSample> out;
    out.reserve(samp.size());
    for (std::size_t j = 0; j < samp.size(); ++j) {
        const Eigen::Vector4d accel = samp.s_jets[j].derivative(2);
        PTCurvatureSample k;
        k.s = samp.arclens[j];
        k.k1 = accel.dot(frames[j].normal(0));
        k.k2 = accel.dot(frames[j].normal(1));
        k.k3 = accel.dot(frames[j].normal(2));
        out.push_back(k);
    }
    return out;
}

KProfile parse_kprofile(std::string_view text, Interval domain)
{
    auto exprs = parse_expression_list(text, 3);
    KProfile profile{{exprs[0], exprs[1], exprs[2]}, domain};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 64; ++j) {
            const double s = domain.lo + domain.span() * double(j) / 63.0;
            try {
                if (!eval(*profile.k[std::size_t(i)], Jet4d::variable(s)).all_finite())
                    throw DomainProbeError(i, s, "profile value is not finite");
            } catch (const DomainError& e) {
                throw DomainProbeError(i, s, e.what());
            }
        }
    }
    return profile;
}

SynthesisResult synthesize_curve(const KProfile& profile, const FrameSample& frame0,
                                 const Eigen::Vector4d& origin, double step, int n)
{
    if (!(step > 0.0)) throw ZeroStepError(0, step);
    const double s0 = profile.domain.lo;
    const double s_end = s0 + step * double(n);
    if (s_end > profile.domain.hi + 1e-12)
        throw ProfileDomainError(s_end, profile.domain.lo, profile.domain.hi);

    auto k_at = [&profile](double s) {
        return Eigen::Vector3d(eval(*profile.k[0], s), eval(*profile.k[1], s),
                               eval(*profile.k[2], s));
    };

    // Joint state: rows 0..3 = frame (T, M1, M2, M3), row 4 = position.
    using State = Eigen::Matrix<double, 5, 4>;
    auto slope = [](const Eigen::Vector3d& k, const State& y) {
        State f = State::Zero();
        const Eigen::Vector4d tangent = y.row(0);
        f.row(4) = tangent;
        for (int i = 0; i < 3; ++i) {
            f.row(0) += k[i] * y.row(i + 1);
            f.row(i + 1) = -k[i] * tangent;
        }
        return f;
    };

    SynthesisResult result;
    result.frames.reserve(std::size_t(n) + 1);
    auto& samp = result.sampling;
    samp.params.reserve(std::size_t(n) + 1);
    samp.jets.reserve(std::size_t(n) + 1);
    samp.speeds.reserve(std::size_t(n) + 1);
    samp.arclens.reserve(std::size_t(n) + 1);
    samp.s_jets.reserve(std::size_t(n) + 1);

    State y;
    y.block<4, 4>(0, 0) = frame0.vectors;
    y.row(4) = origin;

    auto record = [&](double s, const State& state) {
        FrameSample frame;
        frame.s = s - s0;
        frame.flavor = FrameFlavor::ParallelTransport;
        frame.vectors = state.block<4, 4>(0, 0);
        result.frames.push_back(frame);

        // Exact derivatives of the synthesized curve in terms of the frame and
        // the profile jets: alpha' = T, alpha'' = sum k_i M_i,
        // alpha''' = sum k_i' M_i - |k|^2 T,
        // alpha'''' = sum (k_i'' - k_i |k|^2) M_i - 3 (k . k') T.
        std::array<Jet4d, 3> kj;
        for (int i = 0; i < 3; ++i) kj[std::size_t(i)] = eval(*profile.k[std::size_t(i)], Jet4d::variable(s));
        const Eigen::Vector3d k(kj[0].d[0], kj[1].d[0], kj[2].d[0]);
        const Eigen::Vector3d kp(kj[0].d[1], kj[1].d[1], kj[2].d[1]);
        const Eigen::Vector3d kpp(kj[0].d[2], kj[1].d[2], kj[2].d[2]);
        const double ksq = k.squaredNorm();
        const Eigen::Vector4d tangent = state.row(0);
        Eigen::Vector4d d2 = Eigen::Vector4d::Zero();
        Eigen::Vector4d d3 = -ksq * tangent;
        Eigen::Vector4d d4 = -3.0 * k.dot(kp) * tangent;
        for (int i = 0; i < 3; ++i) {
            const Eigen::Vector4d m = state.row(i + 1);
            d2 += k[i] * m;
            d3 += kp[i] * m;
            d4 += (kpp[i] - k[i] * ksq) * m;
        }
        JetVec4d jet;
        for (int c = 0; c < 4; ++c)
            jet[c] = Jet4d(state(4, c), tangent[c], d2[c], d3[c], d4[c]);

        samp.params.push_back(s - s0);
        samp.jets.push_back(jet);
        samp.s_jets.push_back(jet);
        samp.speeds.push_back(tangent.norm());
        samp.arclens.push_back(s - s0);
    };

    record(s0, y);
    for (int j = 0; j < n; ++j) {
        const double s = s0 + step * double(j);
        const State k1 = slope(k_at(s), y);
        const State k2 = slope(k_at(s + 0.5 * step), y + 0.5 * step * k1);
        const State k3 = slope(k_at(s + 0.5 * step), y + 0.5 * step * k2);
        const State k4 = slope(k_at(s + step), y + step * k3);
        y += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        Eigen::Matrix4d frame = y.block<4, 4>(0, 0);
        frame.row(0).normalize();
        reorthonormalize(frame);
        y.block<4, 4>(0, 0) = frame;

        record(s0 + step * double(j + 1), y);
    }
    return result;
}

} // namespace curve4d

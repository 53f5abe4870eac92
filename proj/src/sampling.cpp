#include "curve4d/sampling.hpp"

#include <cmath>

namespace curve4d {

namespace {

constexpr double kStationaryTol = 1e-12;

/// Speed as a jet in t (valid through order 3): ||alpha'(t)||.
Jet4d speed_jet(const JetVec4d& jet)
{
    const JetVec4d v = jet.derivative_jet();
    return sqrt(dot(v, v));
}

double checked_speed(const JetVec4d& jet, double t)
{
    const JetVec4d v = jet.derivative_jet();
    const double q = dot(v, v).d[0];
    if (q < kStationaryTol * kStationaryTol) throw StationaryPointError(t);
    return std::sqrt(q);
}

} // namespace

JetVec4d arclength_jet(const JetVec4d& jet)
{
    // w = 1/||alpha'(t)|| as a jet; then A1 = w * d(alpha)/dt and each further
    // arclength derivative is A_{k+1} = w * dA_k/dt. Each step loses one valid
    // jet order, which is exactly enough to reach d^4 alpha / ds^4 as a value.
    const Jet4d w = recip(speed_jet(jet));
    const JetVec4d a1 = w * jet.derivative_jet();
    const JetVec4d a2 = w * a1.derivative_jet();
    const JetVec4d a3 = w * a2.derivative_jet();
    const JetVec4d a4 = w * a3.derivative_jet();

    JetVec4d out;
    for (int c = 0; c < 4; ++c)
        out[c] = Jet4d(jet[c].d[0], a1[c].d[0], a2[c].d[0], a3[c].d[0], a4[c].d[0]);
    return out;
}

CurveSampling sample_curve(const CurveSpec& spec, int n)
{
    if (n < int(kMinSamples)) throw TooFewSamplesError(std::size_t(std::max(n, 0)), kMinSamples);

    CurveSampling samp;
    samp.params.resize(std::size_t(n));
    samp.jets.reserve(std::size_t(n));
    samp.speeds.reserve(std::size_t(n));

    const double h = spec.domain.span() / double(n - 1);
    for (int j = 0; j < n; ++j) {
        const double t = spec.domain.lo + h * double(j);
        samp.params[std::size_t(j)] = t;
        samp.jets.push_back(eval_curve_jet(spec, t));
        samp.speeds.push_back(checked_speed(samp.jets.back(), t));
    }

    // Composite Simpson on the half-step grid gives cumulative arclength at
    // every sample, not just at even indices.
    samp.arclens.resize(std::size_t(n), 0.0);
    for (int j = 0; j + 1 < n; ++j) {
        const double tm = samp.params[std::size_t(j)] + 0.5 * h;
        const double vm = checked_speed(eval_curve_jet(spec, tm), tm);
        const double seg =
            (h / 6.0) * (samp.speeds[std::size_t(j)] + 4.0 * vm + samp.speeds[std::size_t(j) + 1]);
        samp.arclens[std::size_t(j) + 1] = samp.arclens[std::size_t(j)] + seg;
    }
    return samp;
}

CurveSampling to_arclength_jets(CurveSampling samp)
{
    samp.s_jets.clear();
    samp.s_jets.reserve(samp.size());
    for (std::size_t j = 0; j < samp.size(); ++j) {
        if (samp.speeds[j] < kStationaryTol) throw StationaryPointError(samp.params[j]);
        samp.s_jets.push_back(arclength_jet(samp.jets[j]));
    }
    return samp;
}

CurveSampling sample_arclength(const CurveSpec& spec, int n)
{
    return to_arclength_jets(sample_curve(spec, n));
}

namespace {

/// Fornberg weights: given nodes t[0..m-1] and a center z, returns weights
/// w[order][node] so that f^(order)(z) = sum_i w[order][i] f(t[i]) is exact
/// for polynomials of degree m-1. Orders 0..max_order.
std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& t, int max_order)
{
    const int n = int(t.size()) - 1;
    std::vector<std::vector<double>> c(std::size_t(max_order) + 1,
                                       std::vector<double>(t.size(), 0.0));
    double c1 = 1.0;
    double c4 = t[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = t[std::size_t(i)] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = t[std::size_t(i)] - t[std::size_t(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[std::size_t(k)][std::size_t(i)] =
                        c1 *
                        (double(k) * c[std::size_t(k) - 1][std::size_t(i) - 1] -
                         c5 * c[std::size_t(k)][std::size_t(i) - 1]) /
                        c2;
                c[0][std::size_t(i)] = -c1 * c5 * c[0][std::size_t(i) - 1] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[std::size_t(k)][std::size_t(j)] =
                    (c4 * c[std::size_t(k)][std::size_t(j)] -
                     double(k) * c[std::size_t(k) - 1][std::size_t(j)]) /
                    c3;
            c[0][std::size_t(j)] = c4 * c[0][std::size_t(j)] / c3;
        }
        c1 = c2;
    }
    return c;
}

} // namespace

CurveSampling sampling_from_points(const std::vector<double>& t,
                                   const std::vector<Eigen::Vector4d>& x)
{
    const std::size_t m = t.size();
    if (m < kMinSamples) throw TooFewSamplesError(m, kMinSamples);
    if (x.size() != m) throw MismatchedSeriesError("point and parameter counts differ");
    for (std::size_t j = 0; j + 1 < m; ++j)
        if (!(t[j + 1] > t[j])) throw NonMonotoneParamError(j + 2, t[j + 1]);

    CurveSampling samp;
    samp.params = t;
    samp.jets.resize(m);

    constexpr std::size_t kStencil = 5;
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t first = j >= 2 ? j - 2 : 0;
        if (first + kStencil > m) first = m - kStencil;
        std::vector<double> nodes(t.begin() + long(first), t.begin() + long(first + kStencil));
        const auto w = fd_weights(t[j], nodes, 4);
        JetVec4d jet;
        for (int c = 0; c < 4; ++c) {
            for (int order = 0; order <= 4; ++order) {
                double acc = 0.0;
                for (std::size_t i = 0; i < kStencil; ++i)
                    acc += w[std::size_t(order)][i] * x[first + i][c];
                jet[c].d[std::size_t(order)] = acc;
            }
        }
        samp.jets[j] = jet;
    }

    samp.speeds.resize(m);
    for (std::size_t j = 0; j < m; ++j) samp.speeds[j] = checked_speed(samp.jets[j], t[j]);

    // Derivative-corrected trapezoid per interval, O(h^4) overall, using only
    // grid data (no midpoint evaluations are available for ingested points).
    samp.arclens.assign(m, 0.0);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const double h = t[j + 1] - t[j];
        const Jet4d va = speed_jet(samp.jets[j]);
        const Jet4d vb = speed_jet(samp.jets[j + 1]);
        const double seg =
            0.5 * h * (va.d[0] + vb.d[0]) + h * h / 12.0 * (va.d[1] - vb.d[1]);
        samp.arclens[j + 1] = samp.arclens[j] + seg;
    }
    return to_arclength_jets(std::move(samp));
}

} // namespace curve4d

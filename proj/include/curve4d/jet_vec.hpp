#pragma once

#include <Eigen/Core>

#include "curve4d/jet.hpp"

namespace curve4d {

/// A point of E^4 bundled with its parameter derivatives: one 4-jet per
/// coordinate. This is the carrier for alpha and alpha^(1..4) throughout the
/// frame pipeline.
template <typename Scalar>
struct JetVec4 {
    using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

    std::array<Jet<Scalar>, 4> c{};

    JetVec4() = default;
    JetVec4(Jet<Scalar> x1, Jet<Scalar> x2, Jet<Scalar> x3, Jet<Scalar> x4)
        : c{std::move(x1), std::move(x2), std::move(x3), std::move(x4)} {}

    Jet<Scalar>& operator[](int i) { return c[std::size_t(i)]; }
    const Jet<Scalar>& operator[](int i) const { return c[std::size_t(i)]; }

    /// The order-n derivative as an Eigen vector; derivative(0) is the value.
    Vec4 derivative(int n) const
    {
        return Vec4(c[0].d[std::size_t(n)], c[1].d[std::size_t(n)], c[2].d[std::size_t(n)],
                    c[3].d[std::size_t(n)]);
    }

    Vec4 value() const { return derivative(0); }

    bool all_finite() const
    {
        return c[0].all_finite() && c[1].all_finite() && c[2].all_finite() && c[3].all_finite();
    }

    /// Componentwise derivative jet (valid through order 3).
    JetVec4 derivative_jet() const
    {
        return {c[0].derivative_jet(), c[1].derivative_jet(), c[2].derivative_jet(),
                c[3].derivative_jet()};
    }

    friend JetVec4 operator+(const JetVec4& a, const JetVec4& b)
    {
        return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]};
    }
    friend JetVec4 operator-(const JetVec4& a, const JetVec4& b)
    {
        return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]};
    }
    friend JetVec4 operator*(const Jet<Scalar>& a, const JetVec4& v)
    {
        return {a * v.c[0], a * v.c[1], a * v.c[2], a * v.c[3]};
    }
};

using JetVec4d = JetVec4<double>;

/// Inner product <X,Y> = x1 y1 + x2 y2 + x3 y3 + x4 y4, lifted to jets.
template <typename Scalar>
Jet<Scalar> dot(const JetVec4<Scalar>& a, const JetVec4<Scalar>& b)
{
    return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

/// ||X|| = sqrt(<X,X>) as a jet. Throws DomainError at a stationary point
/// (zero value norm), where the direction is meaningless.
template <typename Scalar>
Jet<Scalar> norm(const JetVec4<Scalar>& v)
{
    const Jet<Scalar> q = dot(v, v);
    if (!(q.d[0] > Scalar(0))) throw DomainError("jet_vec_norm", double(q.d[0]));
    return sqrt(q);
}

} // namespace curve4d

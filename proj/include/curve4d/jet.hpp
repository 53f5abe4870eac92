#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>

#include "curve4d/errors.hpp"

namespace curve4d {

/// Truncated 4-jet: a value together with its derivatives of order 1..4 with
/// respect to the curve parameter. Arithmetic propagates exact derivatives of
/// the composite function (Leibniz / Faa di Bruno through order 4), so curve
/// coordinates evaluated on jets carry alpha', alpha'', alpha''', alpha''''
/// with no truncation error beyond floating-point rounding.
template <typename Scalar>
struct Jet {
    using scalar_type = Scalar;
    static constexpr int kOrder = 4;

    /// d[n] = n-th derivative; d[0] is the value.
    std::array<Scalar, kOrder + 1> d{};

    constexpr Jet() = default;

    /// Constant: value only, derivatives zero.
    constexpr Jet(Scalar value) : d{value, Scalar(0), Scalar(0), Scalar(0), Scalar(0)} {}

    constexpr Jet(Scalar d0, Scalar d1, Scalar d2, Scalar d3, Scalar d4) : d{d0, d1, d2, d3, d4} {}

    /// The jet of the parameter itself at `value`: (value, 1, 0, 0, 0).
    static constexpr Jet variable(Scalar value)
    {
        return Jet(value, Scalar(1), Scalar(0), Scalar(0), Scalar(0));
    }

    constexpr Scalar value() const { return d[0]; }

    bool all_finite() const
    {
        for (Scalar v : d)
            if (!std::isfinite(v)) return false;
        return true;
    }

    /// Jet of the derivative: shifts orders down by one. The top entry is set
    /// to zero and is only valid through order 3.
    constexpr Jet derivative_jet() const { return Jet(d[1], d[2], d[3], d[4], Scalar(0)); }

    constexpr Jet operator-() const { return Jet(-d[0], -d[1], -d[2], -d[3], -d[4]); }

    constexpr Jet& operator+=(const Jet& r)
    {
        for (int n = 0; n <= kOrder; ++n) d[n] += r.d[n];
        return *this;
    }
    constexpr Jet& operator-=(const Jet& r)
    {
        for (int n = 0; n <= kOrder; ++n) d[n] -= r.d[n];
        return *this;
    }
    constexpr Jet& operator*=(Scalar c)
    {
        for (int n = 0; n <= kOrder; ++n) d[n] *= c;
        return *this;
    }

    friend constexpr Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend constexpr Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend constexpr Jet operator*(Jet a, Scalar c) { return a *= c; }
    friend constexpr Jet operator*(Scalar c, Jet a) { return a *= c; }
    friend constexpr Jet operator/(Jet a, Scalar c) { return a *= (Scalar(1) / c); }

    /// Leibniz rule: (ab)^(n) = sum_i C(n,i) a^(i) b^(n-i).
    friend constexpr Jet operator*(const Jet& a, const Jet& b)
    {
        const auto& x = a.d;
        const auto& y = b.d;
        Jet r;
        r.d[0] = x[0] * y[0];
        r.d[1] = x[0] * y[1] + x[1] * y[0];
        r.d[2] = x[0] * y[2] + Scalar(2) * x[1] * y[1] + x[2] * y[0];
        r.d[3] = x[0] * y[3] + Scalar(3) * x[1] * y[2] + Scalar(3) * x[2] * y[1] + x[3] * y[0];
        r.d[4] = x[0] * y[4] + Scalar(4) * x[1] * y[3] + Scalar(6) * x[2] * y[2] +
                 Scalar(4) * x[3] * y[1] + x[4] * y[0];
        return r;
    }

    friend std::ostream& operator<<(std::ostream& out, const Jet& j)
    {
        out << "(" << j.d[0];
        for (int n = 1; n <= kOrder; ++n) out << ", " << j.d[n];
        return out << ")";
    }
};

using Jet4d = Jet<double>;

namespace detail {

/// Composes outer derivative values f0..f4 (taken at g.d[0]) with the inner
/// jet g by the order-4 Faa di Bruno formulas.
template <typename Scalar>
constexpr Jet<Scalar> chain(const std::array<Scalar, 5>& f, const Jet<Scalar>& g)
{
    const Scalar g1 = g.d[1], g2 = g.d[2], g3 = g.d[3], g4 = g.d[4];
    Jet<Scalar> r;
    r.d[0] = f[0];
    r.d[1] = f[1] * g1;
    r.d[2] = f[2] * g1 * g1 + f[1] * g2;
    r.d[3] = f[3] * g1 * g1 * g1 + Scalar(3) * f[2] * g1 * g2 + f[1] * g3;
    r.d[4] = f[4] * g1 * g1 * g1 * g1 + Scalar(6) * f[3] * g1 * g1 * g2 +
             f[2] * (Scalar(4) * g1 * g3 + Scalar(3) * g2 * g2) + f[1] * g4;
    return r;
}

} // namespace detail

template <typename Scalar>
Jet<Scalar> sin(const Jet<Scalar>& g)
{
    const Scalar s = std::sin(g.d[0]), c = std::cos(g.d[0]);
    return detail::chain<Scalar>({s, c, -s, -c, s}, g);
}

template <typename Scalar>
Jet<Scalar> cos(const Jet<Scalar>& g)
{
    const Scalar s = std::sin(g.d[0]), c = std::cos(g.d[0]);
    return detail::chain<Scalar>({c, -s, -c, s, c}, g);
}

template <typename Scalar>
Jet<Scalar> tan(const Jet<Scalar>& g)
{
    // Derivatives of tan as polynomials in t = tan(x).
    const Scalar t = std::tan(g.d[0]);
    const Scalar t2 = t * t;
    const Scalar f1 = Scalar(1) + t2;
    const Scalar f2 = Scalar(2) * t * f1;
    const Scalar f3 = (Scalar(2) + Scalar(6) * t2) * f1;
    const Scalar f4 = (Scalar(16) * t + Scalar(24) * t2 * t) * f1;
    return detail::chain<Scalar>({t, f1, f2, f3, f4}, g);
}

template <typename Scalar>
Jet<Scalar> exp(const Jet<Scalar>& g)
{
    const Scalar e = std::exp(g.d[0]);
    return detail::chain<Scalar>({e, e, e, e, e}, g);
}

template <typename Scalar>
Jet<Scalar> log(const Jet<Scalar>& g)
{
    const Scalar x = g.d[0];
    if (!(x > Scalar(0))) throw DomainError("log", double(x));
    const Scalar i = Scalar(1) / x;
    const Scalar i2 = i * i;
    return detail::chain<Scalar>(
        {std::log(x), i, -i2, Scalar(2) * i2 * i, Scalar(-6) * i2 * i2}, g);
}

template <typename Scalar>
Jet<Scalar> sqrt(const Jet<Scalar>& g)
{
    const Scalar x = g.d[0];
    if (!(x > Scalar(0))) throw DomainError("sqrt", double(x));
    const Scalar r = std::sqrt(x);
    const Scalar i = Scalar(1) / x;
    return detail::chain<Scalar>({r,
                                  Scalar(0.5) * r * i,
                                  Scalar(-0.25) * r * i * i,
                                  Scalar(0.375) * r * i * i * i,
                                  Scalar(-0.9375) * r * i * i * i * i},
                                 g);
}

template <typename Scalar>
Jet<Scalar> sinh(const Jet<Scalar>& g)
{
    const Scalar s = std::sinh(g.d[0]), c = std::cosh(g.d[0]);
    return detail::chain<Scalar>({s, c, s, c, s}, g);
}

template <typename Scalar>
Jet<Scalar> cosh(const Jet<Scalar>& g)
{
    const Scalar s = std::sinh(g.d[0]), c = std::cosh(g.d[0]);
    return detail::chain<Scalar>({c, s, c, s, c}, g);
}

template <typename Scalar>
Jet<Scalar> recip(const Jet<Scalar>& g)
{
    const Scalar x = g.d[0];
    if (x == Scalar(0)) throw DomainError("recip", double(x));
    const Scalar i = Scalar(1) / x;
    const Scalar i2 = i * i;
    return detail::chain<Scalar>(
        {i, -i2, Scalar(2) * i2 * i, Scalar(-6) * i2 * i2, Scalar(24) * i2 * i2 * i}, g);
}

/// Division is one chain-rule kernel: a * recip(b).
template <typename Scalar>
Jet<Scalar> operator/(const Jet<Scalar>& a, const Jet<Scalar>& b)
{
    return a * recip(b);
}

/// Power with a literal rational exponent. Integer exponents are evaluated by
/// repeated multiplication so negative bases stay exact; otherwise the base
/// must be positive.
template <typename Scalar>
Jet<Scalar> pow(const Jet<Scalar>& g, Scalar e)
{
    const Scalar rounded = std::nearbyint(e);
    if (std::abs(e - rounded) < Scalar(1e-12) && std::abs(rounded) <= Scalar(32)) {
        const auto n = static_cast<std::int64_t>(rounded);
        if (n == 0) return Jet<Scalar>(Scalar(1));
        Jet<Scalar> r(Scalar(1));
        const std::int64_t m = n < 0 ? -n : n;
        for (std::int64_t i = 0; i < m; ++i) r = r * g;
        return n < 0 ? recip(r) : r;
    }
    const Scalar x = g.d[0];
    if (!(x > Scalar(0))) throw DomainError("pow", double(x));
    std::array<Scalar, 5> f;
    f[0] = std::pow(x, e);
    Scalar coeff = Scalar(1);
    for (int k = 1; k <= 4; ++k) {
        coeff *= e - Scalar(k - 1);
        f[k] = coeff * std::pow(x, e - Scalar(k));
    }
    return detail::chain(f, g);
}

/// Tags for the unary functions the expression language exposes, plus the two
/// structural ones (neg, recip) used internally.
enum class UnaryFn : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Neg, Recip };

inline const char* name(UnaryFn f)
{
    switch (f) {
        case UnaryFn::Sin: return "sin";
        case UnaryFn::Cos: return "cos";
        case UnaryFn::Tan: return "tan";
        case UnaryFn::Exp: return "exp";
        case UnaryFn::Log: return "log";
        case UnaryFn::Sqrt: return "sqrt";
        case UnaryFn::Sinh: return "sinh";
        case UnaryFn::Cosh: return "cosh";
        case UnaryFn::Neg: return "neg";
        case UnaryFn::Recip: return "recip";
    }
    return "?";
}

template <typename Scalar>
Jet<Scalar> apply(UnaryFn f, const Jet<Scalar>& g)
{
    switch (f) {
        case UnaryFn::Sin: return sin(g);
        case UnaryFn::Cos: return cos(g);
        case UnaryFn::Tan: return tan(g);
        case UnaryFn::Exp: return exp(g);
        case UnaryFn::Log: return log(g);
        case UnaryFn::Sqrt: return sqrt(g);
        case UnaryFn::Sinh: return sinh(g);
        case UnaryFn::Cosh: return cosh(g);
        case UnaryFn::Neg: return -g;
        case UnaryFn::Recip: return recip(g);
    }
    throw DomainError("apply", double(g.d[0]));
}

/// Scalar counterpart so templated expression evaluation works on plain
/// doubles as well as jets.
template <typename Scalar>
Scalar apply(UnaryFn f, Scalar x)
    requires std::is_floating_point_v<Scalar>
{
    switch (f) {
        case UnaryFn::Sin: return std::sin(x);
        case UnaryFn::Cos: return std::cos(x);
        case UnaryFn::Tan: return std::tan(x);
        case UnaryFn::Exp: return std::exp(x);
        case UnaryFn::Log:
            if (!(x > Scalar(0))) throw DomainError("log", double(x));
            return std::log(x);
        case UnaryFn::Sqrt:
            if (!(x > Scalar(0))) throw DomainError("sqrt", double(x));
            return std::sqrt(x);
        case UnaryFn::Sinh: return std::sinh(x);
        case UnaryFn::Cosh: return std::cosh(x);
        case UnaryFn::Neg: return -x;
        case UnaryFn::Recip:
            if (x == Scalar(0)) throw DomainError("recip", double(x));
            return Scalar(1) / x;
    }
    throw DomainError("apply", double(x));
}

} // namespace curve4d

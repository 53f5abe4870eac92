#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "curve4d/jet.hpp"

namespace curve4d {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// AST node of the curve expression mini-language. Trees are immutable and
/// shared; a CurveSpec holds four of them.
struct Expr {
    enum class Kind { Number, Param, Pi, E, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind;
    double number = 0.0;      // Number literal, or the Pow exponent
    UnaryFn fn = UnaryFn::Sin; // Call only
    ExprPtr lhs;               // unary operand / left operand / Pow base
    ExprPtr rhs;               // right operand of binary nodes

    static ExprPtr make_number(double v);
    static ExprPtr make_param();
    static ExprPtr make_constant(Kind k);
    static ExprPtr make_unary(Kind k, ExprPtr operand);
    static ExprPtr make_binary(Kind k, ExprPtr l, ExprPtr r);
    static ExprPtr make_pow(ExprPtr base, double exponent);
    static ExprPtr make_call(UnaryFn f, ExprPtr arg);
};

/// Parses a single expression; the whole input must be consumed.
ExprPtr parse_expression(std::string_view text);

/// Parses exactly `count` comma-separated expressions.
std::vector<ExprPtr> parse_expression_list(std::string_view text, std::size_t count);

/// Structural AST equality (kinds, literals bitwise, children recursively).
bool expr_equal(const Expr& a, const Expr& b);

/// Renders the AST back to source form; parse(to_string(e)) reproduces e.
std::string to_string(const Expr& e);

/// Evaluates the AST at the parameter value `s`. Works for plain floating
/// point and for jets, which is how curve coordinates acquire derivatives.
template <typename T>
T eval(const Expr& e, const T& s)
{
    switch (e.kind) {
        case Expr::Kind::Number: return T(e.number);
        case Expr::Kind::Param: return s;
        case Expr::Kind::Pi: return T(3.14159265358979323846);
        case Expr::Kind::E: return T(2.71828182845904523536);
        case Expr::Kind::Neg: return apply(UnaryFn::Neg, eval(*e.lhs, s));
        case Expr::Kind::Add: return eval(*e.lhs, s) + eval(*e.rhs, s);
        case Expr::Kind::Sub: return eval(*e.lhs, s) - eval(*e.rhs, s);
        case Expr::Kind::Mul: return eval(*e.lhs, s) * eval(*e.rhs, s);
        case Expr::Kind::Div: {
            const T num = eval(*e.lhs, s);
            if constexpr (std::is_floating_point_v<T>) {
                return num * apply(UnaryFn::Recip, eval(*e.rhs, s));
            } else {
                return num * recip(eval(*e.rhs, s));
            }
        }
        case Expr::Kind::Pow: {
            const T base = eval(*e.lhs, s);
            if constexpr (std::is_floating_point_v<T>) {
                const double r = std::nearbyint(e.number);
                if (std::abs(e.number - r) < 1e-12 && std::abs(r) <= 32) {
                    T acc(1);
                    for (int i = 0; i < int(std::abs(r)); ++i) acc *= base;
                    return r < 0 ? T(1) / acc : acc;
                }
                if (!(base > T(0))) throw DomainError("pow", double(base));
                return std::pow(base, T(e.number));
            } else {
                return pow(base, typename T::scalar_type(e.number));
            }
        }
        case Expr::Kind::Call: return apply(e.fn, eval(*e.lhs, s));
    }
    throw DomainError("eval", 0.0);
}

} // namespace curve4d

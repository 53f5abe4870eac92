#include "curve4d/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <vector>

namespace curve4d {

ExprPtr Expr::make_number(double v)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->number = v;
    return e;
}

ExprPtr Expr::make_param()
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Param;
    return e;
}

ExprPtr Expr::make_constant(Kind k)
{
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}

ExprPtr Expr::make_unary(Kind k, ExprPtr operand)
{
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(operand);
    return e;
}

ExprPtr Expr::make_binary(Kind k, ExprPtr l, ExprPtr r)
{
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr Expr::make_pow(ExprPtr base, double exponent)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pow;
    e->lhs = std::move(base);
    e->number = exponent;
    return e;
}

ExprPtr Expr::make_call(UnaryFn f, ExprPtr arg)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call;
    e->fn = f;
    e->lhs = std::move(arg);
    return e;
}

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

    Token(Kind k, std::size_t off) : kind(k), offset(off) {}

    Kind kind;
    std::size_t offset;
    double number = 0.0;
    std::string text;
};

const char* describe(Token::Kind k)
{
    switch (k) {
        case Token::Kind::Number: return "number";
        case Token::Kind::Ident: return "identifier";
        case Token::Kind::Plus: return "'+'";
        case Token::Kind::Minus: return "'-'";
        case Token::Kind::Star: return "'*'";
        case Token::Kind::Slash: return "'/'";
        case Token::Kind::Caret: return "'^'";
        case Token::Kind::LParen: return "'('";
        case Token::Kind::RParen: return "')'";
        case Token::Kind::Comma: return "','";
        case Token::Kind::End: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        const std::size_t at = i;
        switch (ch) {
            case '+': out.push_back({Token::Kind::Plus, at}); ++i; continue;
            case '-': out.push_back({Token::Kind::Minus, at}); ++i; continue;
            case '*': out.push_back({Token::Kind::Star, at}); ++i; continue;
            case '/': out.push_back({Token::Kind::Slash, at}); ++i; continue;
            case '^': out.push_back({Token::Kind::Caret, at}); ++i; continue;
            case '(': out.push_back({Token::Kind::LParen, at}); ++i; continue;
            case ')': out.push_back({Token::Kind::RParen, at}); ++i; continue;
            case ',': out.push_back({Token::Kind::Comma, at}); ++i; continue;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.'))
                ++j;
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    ++k;
                    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])))
                        ++k;
                    j = k;
                }
            }
            double value = 0.0;
            const auto res = std::from_chars(text.data() + i, text.data() + j, value);
            if (res.ec != std::errc() || res.ptr != text.data() + j)
                throw SyntaxError(at, "a valid number", std::string(text.substr(i, j - i)));
            Token t{Token::Kind::Number, at};
            t.number = value;
            out.push_back(t);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            Token t{Token::Kind::Ident, at};
            t.text = std::string(text.substr(i, j - i));
            out.push_back(t);
            i = j;
            continue;
        }
        throw SyntaxError(at, "a token", std::string(1, ch));
    }
    out.push_back({Token::Kind::End, text.size()});
    return out;
}

std::optional<UnaryFn> function_named(const std::string& name)
{
    if (name == "sin") return UnaryFn::Sin;
    if (name == "cos") return UnaryFn::Cos;
    if (name == "tan") return UnaryFn::Tan;
    if (name == "exp") return UnaryFn::Exp;
    if (name == "log") return UnaryFn::Log;
    if (name == "sqrt") return UnaryFn::Sqrt;
    if (name == "sinh") return UnaryFn::Sinh;
    if (name == "cosh") return UnaryFn::Cosh;
    return std::nullopt;
}

// Recursive descent over:
//   expr   := term { ("+"|"-") term }
//   term   := factor { ("*"|"/") factor }
//   factor := "-" factor | power          (pow binds tighter than unary minus)
//   power  := atom [ "^" rational ]
//   atom   := number | "s" | "pi" | "e" | ident "(" expr ")" | "(" expr ")"
class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    ExprPtr parse_full()
    {
        ExprPtr e = parse_expr();
        expect(Token::Kind::End, "end of input, ',', or an operator");
        return e;
    }

    // Parses a comma list; used for curve coordinates and k-profiles.
    std::vector<ExprPtr> parse_list(std::size_t expected_count)
    {
        std::vector<ExprPtr> out;
        out.push_back(parse_expr());
        while (peek().kind == Token::Kind::Comma) {
            ++pos_;
            out.push_back(parse_expr());
        }
        expect(Token::Kind::End, "',' or end of input");
        if (out.size() != expected_count)
            throw SyntaxError(peek().offset,
                              std::to_string(expected_count) + " comma-separated expressions",
                              std::to_string(out.size()) + " given");
        return out;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    const Token& expect(Token::Kind k, const std::string& what)
    {
        if (peek().kind != k) throw SyntaxError(peek().offset, what, describe(peek().kind));
        return tokens_[pos_++];
    }

    ExprPtr parse_expr()
    {
        ExprPtr e = parse_term();
        while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
            const bool add = peek().kind == Token::Kind::Plus;
            ++pos_;
            e = Expr::make_binary(add ? Expr::Kind::Add : Expr::Kind::Sub, e, parse_term());
        }
        return e;
    }

    ExprPtr parse_term()
    {
        ExprPtr e = parse_factor();
        while (peek().kind == Token::Kind::Star || peek().kind == Token::Kind::Slash) {
            const bool mul = peek().kind == Token::Kind::Star;
            ++pos_;
            e = Expr::make_binary(mul ? Expr::Kind::Mul : Expr::Kind::Div, e, parse_factor());
        }
        return e;
    }

    ExprPtr parse_factor()
    {
        if (peek().kind == Token::Kind::Minus) {
            ++pos_;
            return Expr::make_unary(Expr::Kind::Neg, parse_factor());
        }
        return parse_power();
    }

    ExprPtr parse_power()
    {
        ExprPtr base = parse_atom();
        if (peek().kind == Token::Kind::Caret) {
            ++pos_;
            double sign = 1.0;
            if (peek().kind == Token::Kind::Minus) {
                ++pos_;
                sign = -1.0;
            }
            const Token& t = expect(Token::Kind::Number, "a literal rational exponent");
            return Expr::make_pow(base, sign * t.number);
        }
        return base;
    }

    ExprPtr parse_atom()
    {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::Number: ++pos_; return Expr::make_number(t.number);
            case Token::Kind::LParen: {
                ++pos_;
                ExprPtr e = parse_expr();
                expect(Token::Kind::RParen, "')'");
                return e;
            }
            case Token::Kind::Ident: {
                ++pos_;
                if (t.text == "s") return Expr::make_param();
                if (t.text == "pi") return Expr::make_constant(Expr::Kind::Pi);
                if (t.text == "e") return Expr::make_constant(Expr::Kind::E);
                const auto fn = function_named(t.text);
                if (!fn)
                    throw SyntaxError(t.offset, "'s', 'pi', 'e', or a function name",
                                      "'" + t.text + "'");
                expect(Token::Kind::LParen, "'(' after '" + t.text + "'");
                ExprPtr arg = parse_expr();
                if (peek().kind == Token::Kind::Comma)
                    throw ArityError(peek().offset,
                                     "'" + t.text + "' takes exactly one argument");
                expect(Token::Kind::RParen, "')'");
                return Expr::make_call(*fn, arg);
            }
            default:
                throw SyntaxError(t.offset, "number, 's', 'pi', 'e', function call, '(' or '-'",
                                  describe(t.kind));
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

int precedence(Expr::Kind k)
{
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5; // atoms
    }
}

std::string format_number(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print(const Expr& e, std::string& out, int parent_prec, bool right_operand)
{
    const int prec = precedence(e.kind);
    const bool parens = prec < parent_prec || (prec == parent_prec && right_operand);
    if (parens) out += '(';
    switch (e.kind) {
        case Expr::Kind::Number: out += format_number(e.number); break;
        case Expr::Kind::Param: out += 's'; break;
        case Expr::Kind::Pi: out += "pi"; break;
        case Expr::Kind::E: out += 'e'; break;
        case Expr::Kind::Neg:
            out += '-';
            print(*e.lhs, out, prec, false);
            break;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
        case Expr::Kind::Mul:
        case Expr::Kind::Div: {
            print(*e.lhs, out, prec, false);
            switch (e.kind) {
                case Expr::Kind::Add: out += " + "; break;
                case Expr::Kind::Sub: out += " - "; break;
                case Expr::Kind::Mul: out += "*"; break;
                default: out += "/"; break;
            }
            print(*e.rhs, out, prec, true);
            break;
        }
        case Expr::Kind::Pow:
            print(*e.lhs, out, prec + 1, false); // base must be an atom or parenthesized
            out += '^';
            out += format_number(e.number);
            break;
        case Expr::Kind::Call:
            out += name(e.fn);
            out += '(';
            print(*e.lhs, out, 0, false);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

} // namespace

ExprPtr parse_expression(std::string_view text)
{
    if (text.empty()) throw SyntaxError(0, "an expression", "empty input");
    return Parser(text).parse_full();
}

std::vector<ExprPtr> parse_expression_list(std::string_view text, std::size_t count)
{
    if (text.empty()) throw SyntaxError(0, "an expression list", "empty input");
    return Parser(text).parse_list(count);
}

bool expr_equal(const Expr& a, const Expr& b)
{
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Number: return a.number == b.number;
        case Expr::Kind::Param:
        case Expr::Kind::Pi:
        case Expr::Kind::E: return true;
        case Expr::Kind::Neg: return expr_equal(*a.lhs, *b.lhs);
        case Expr::Kind::Pow: return a.number == b.number && expr_equal(*a.lhs, *b.lhs);
        case Expr::Kind::Call: return a.fn == b.fn && expr_equal(*a.lhs, *b.lhs);
        default: return expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    }
}

std::string to_string(const Expr& e)
{
    std::string out;
    print(e, out, 0, false);
    return out;
}

} // namespace curve4d

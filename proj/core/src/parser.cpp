#include "polyflow/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace polyflow {

ParseError::ParseError(Kind kind, const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

struct ExprNode {
    enum class Op { Number, Variable, Parameter, Time, Clock, Neg, Add, Sub, Mul, Div, Pow };
    Op op;
    Rational value;
    int var = 0;
    std::string name;
    std::vector<std::shared_ptr<const ExprNode>> kids;
    int line = 1;
    int column = 1;
};

int Expr::line() const { return root_ ? root_->line : 0; }
int Expr::column() const { return root_ ? root_->column : 0; }

namespace {

using Node = std::shared_ptr<const ExprNode>;
using Op = ExprNode::Op;
using Kind = ParseError::Kind;

enum class Tok { Number, Ident, Symbol, End };

struct Token {
    Tok type;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view src, int line, int column) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        std::size_t j = i;
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            out.push_back({Tok::Number, std::string(src.substr(i, j - i)), line, column});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), line, column});
        } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
            j = i + 1;
            out.push_back({Tok::Symbol, std::string(1, c), line, column});
        } else {
            throw ParseError(Kind::Syntax, std::string("unexpected character '") + c + "'", line, column);
        }
        advance(j - i);
    }
    out.push_back({Tok::End, "", line, column});
    return out;
}

Rational decimal_value(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(mpz_class(text));
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    mpz_class num(whole.empty() ? "0" : whole);
    mpz_class den = 1;
    for (char d : frac) {
        num = num * 10 + (d - '0');
        den *= 10;
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Node make(Op op, const Token& at, std::vector<Node> kids = {}) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->kids = std::move(kids);
    n->line = at.line;
    n->column = at.column;
    return n;
}

class Parser {
public:
    Parser(std::vector<Token> toks, const Declarations& decl) : toks_(std::move(toks)), decl_(decl) {}

    Node parse() {
        if (peek().type == Tok::End) fail(Kind::Syntax, "empty expression");
        Node n = sum();
        if (peek().type != Tok::End) fail(Kind::Syntax, "unexpected '" + peek().text + "'");
        return n;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }
    bool is_symbol(char c) const { return peek().type == Tok::Symbol && peek().text[0] == c; }

    [[noreturn]] void fail(Kind kind, const std::string& msg) const {
        throw ParseError(kind, msg, peek().line, peek().column);
    }

    void expect(char c) {
        if (!is_symbol(c)) {
            const std::string got = peek().type == Tok::End ? "end of input" : "'" + peek().text + "'";
            fail(Kind::Syntax, std::string("expected '") + c + "', got " + got);
        }
        take();
    }

    Node sum() {
        Node lhs = product();
        while (is_symbol('+') || is_symbol('-')) {
            const Token& op = take();
            lhs = make(op.text[0] == '+' ? Op::Add : Op::Sub, op, {lhs, product()});
        }
        return lhs;
    }

    bool starts_atom() const {
        return peek().type == Tok::Number || peek().type == Tok::Ident || is_symbol('(');
    }

    Node product() {
        Node lhs = unary();
        while (true) {
            if (is_symbol('*') || is_symbol('/')) {
                const Token& op = take();
                lhs = make(op.text[0] == '*' ? Op::Mul : Op::Div, op, {lhs, unary()});
            } else if (in_exp_ > 0 && starts_atom()) {
                // "2 t" inside exp(...)
                const Token& at = peek();
                lhs = make(Op::Mul, at, {lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    Node unary() {
        if (is_symbol('-')) {
            const Token& op = take();
            return make(Op::Neg, op, {unary()});
        }
        if (is_symbol('+')) fail(Kind::Syntax, "unary '+' is not supported");
        return power();
    }

    Node power() {
        Node base = atom();
        if (is_symbol('^')) {
            const Token& op = take();
            return make(Op::Pow, op, {base, exponent()});
        }
        return base;
    }

    Node exponent() {
        if (is_symbol('-')) {
            const Token& op = take();
            return make(Op::Neg, op, {exponent()});
        }
        return power();
    }

    Node atom() {
        const Token& tok = peek();
        switch (tok.type) {
            case Tok::Number: {
                take();
                auto n = std::make_shared<ExprNode>(*make(Op::Number, tok));
                n->value = decimal_value(tok.text);
                return n;
            }
            case Tok::Ident:
                return identifier();
            case Tok::Symbol:
                if (tok.text[0] == '(') {
                    take();
                    Node inner = sum();
                    expect(')');
                    return inner;
                }
                fail(Kind::Syntax, "unexpected '" + tok.text + "'");
            case Tok::End:
                fail(Kind::Syntax, "unexpected end of input");
        }
        fail(Kind::Syntax, "unreachable");
    }

    Node identifier() {
        const Token tok = take();
        if (tok.text == "exp") {
            expect('(');
            ++in_exp_;
            Node arg = sum();
            --in_exp_;
            expect(')');
            return make(Op::Clock, tok, {arg});
        }
        for (int i = 0; i < 3; ++i) {
            if (decl_.variables[i] == tok.text) {
                auto n = std::make_shared<ExprNode>(*make(Op::Variable, tok));
                n->var = i;
                return n;
            }
        }
        if (std::find(decl_.parameters.begin(), decl_.parameters.end(), tok.text) != decl_.parameters.end()) {
            auto n = std::make_shared<ExprNode>(*make(Op::Parameter, tok));
            n->name = tok.text;
            return n;
        }
        if (tok.text == "t") {
            if (in_exp_ == 0)
                throw ParseError(Kind::UnknownIdentifier, "time 't' may only appear inside exp(...)", tok.line,
                                 tok.column);
            return make(Op::Time, tok);
        }
        throw ParseError(Kind::UnknownIdentifier, "unknown identifier '" + tok.text + "'", tok.line, tok.column);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Declarations& decl_;
    int in_exp_ = 0;
};

[[noreturn]] void fail_at(const ExprNode& n, Kind kind, const std::string& msg) {
    throw ParseError(kind, msg, n.line, n.column);
}

/// Moves a denominator of the form c * s^k into the numerator.
Ratio fold_clock(Ratio r) {
    if (r.den.size() != 1) return r;
    const auto [m, c] = r.den.leading_term();
    if (m[Var::X] != 0 || m[Var::Y] != 0 || m[Var::Z] != 0) return r;
    Polynomial inv = Polynomial::clock(-m[Var::S]) * (Rational(1) / c);
    return Ratio(r.num * inv);
}

Rational constant_of(const Ratio& r, const ExprNode& at, Kind kind, const std::string& what) {
    const auto p = r.as_polynomial();
    if (!p || !p->is_constant()) fail_at(at, kind, what + " must be a constant");
    return p->coefficient(Monomial{});
}

Ratio eval(const ExprNode& n, const Bindings& b) {
    switch (n.op) {
        case Op::Number:
            return Ratio(n.value);
        case Op::Variable:
            return Ratio(Polynomial::variable(static_cast<Var>(n.var)));
        case Op::Parameter: {
            const auto it = b.find(n.name);
            if (it == b.end()) fail_at(n, Kind::UnboundParameter, "parameter '" + n.name + "' has no value");
            return Ratio(it->second);
        }
        case Op::Time:
            return Ratio(Polynomial::variable(Var::S));
        case Op::Clock: {
            const Ratio arg = eval(*n.kids[0], b);
            const auto p = arg.as_polynomial();
            bool ok = p.has_value();
            Rational k = 0;
            if (ok && !p->is_zero()) {
                const auto [m, c] = p->leading_term();
                ok = p->size() == 1 && m == Monomial(0, 0, 0, 1);
                k = c;
            }
            if (!ok) fail_at(n, Kind::Syntax, "exp(...) argument must be a constant multiple of t");
            if (!is_integer(k)) fail_at(n, Kind::NonIntegerExponent, "exp(...) needs an integer multiple of t");
            return Ratio(Polynomial::clock(static_cast<int>(k.get_num().get_si())));
        }
        case Op::Neg:
            return -eval(*n.kids[0], b);
        case Op::Add:
            return fold_clock(eval(*n.kids[0], b) + eval(*n.kids[1], b));
        case Op::Sub:
            return fold_clock(eval(*n.kids[0], b) - eval(*n.kids[1], b));
        case Op::Mul:
            return fold_clock(eval(*n.kids[0], b) * eval(*n.kids[1], b));
        case Op::Div: {
            const Ratio d = eval(*n.kids[1], b);
            if (d.is_zero()) fail_at(n, Kind::DivisionByZero, "division by zero");
            return fold_clock(eval(*n.kids[0], b) / d);
        }
        case Op::Pow: {
            const Ratio base = eval(*n.kids[0], b);
            const Rational e =
                constant_of(eval(*n.kids[1], b), *n.kids[1], Kind::NonIntegerExponent, "exponent");
            if (!is_integer(e)) fail_at(*n.kids[1], Kind::NonIntegerExponent, "exponent must be an integer");
            if (!e.get_num().fits_sint_p() || abs(e) > 1000)
                fail_at(*n.kids[1], Kind::NonIntegerExponent, "exponent out of range");
            const int k = static_cast<int>(e.get_num().get_si());
            if (k < 0 && base.is_zero()) fail_at(n, Kind::DivisionByZero, "zero raised to a negative power");
            return fold_clock(base.pow(k));
        }
    }
    fail_at(n, Kind::Syntax, "unreachable");
}

void collect_params(const ExprNode& n, std::set<std::string>& out) {
    if (n.op == Op::Parameter) out.insert(n.name);
    for (const auto& k : n.kids) collect_params(*k, out);
}

}  // namespace

Expr parse_ast(std::string_view src, const Declarations& decl, int line, int column) {
    Parser p(tokenize(src, line, column), decl);
    return Expr(p.parse());
}

Ratio evaluate(const Expr& e, const Bindings& bindings) {
    if (e.empty()) throw std::invalid_argument("evaluate: empty expression");
    return eval(*e.root(), bindings);
}

Polynomial evaluate_polynomial(const Expr& e, const Bindings& bindings) {
    const Ratio r = evaluate(e, bindings);
    auto p = r.as_polynomial();
    if (!p) {
        if (auto q = r.num.divide_exact(r.den)) return *q;
        fail_at(*e.root(), Kind::NonPolynomial, "expression is not a polynomial: " + r.to_string());
    }
    return *p;
}

Rational evaluate_constant(const Expr& e, const Bindings& bindings) {
    return constant_of(evaluate(e, bindings), *e.root(), Kind::NonPolynomial, "value");
}

std::vector<std::string> referenced_parameters(const Expr& e) {
    std::set<std::string> out;
    if (!e.empty()) collect_params(*e.root(), out);
    return {out.begin(), out.end()};
}

Ratio parse_ratio(std::string_view src, const Declarations& decl, const Bindings& bindings) {
    return evaluate(parse_ast(src, decl), bindings);
}

Polynomial parse_expression(std::string_view src, const Declarations& decl, const Bindings& bindings) {
    return evaluate_polynomial(parse_ast(src, decl), bindings);
}

Rational parse_constant(std::string_view src, const Declarations& decl, const Bindings& bindings) {
    return evaluate_constant(parse_ast(src, decl), bindings);
}

}  // namespace polyflow

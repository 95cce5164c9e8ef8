#include "tsfloquet/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include "tsfloquet/error.hpp"

namespace tsfloquet {

struct Expression::Node {
    Kind kind = Kind::Constant;
    double value = 0.0;
    Cmp cmp = Cmp::Eq;
    std::vector<Expression> args;
    std::string note;  // NonDiff: name of the offending construct
};

namespace {

using Kind = Expression::Kind;

std::string number_text(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), std::abs(v));
    std::string s(buf, res.ptr);
    return v < 0 || std::signbit(v) ? "(-" + s + ")" : s;
}

const char* cmp_name(Cmp c) {
    switch (c) {
        case Cmp::Eq: return "eq";
        case Cmp::Lt: return "lt";
        case Cmp::Le: return "le";
        case Cmp::Gt: return "gt";
        case Cmp::Ge: return "ge";
    }
    return "eq";
}

const char* func_name(Kind k) {
    switch (k) {
        case Kind::Sin: return "sin";
        case Kind::Cos: return "cos";
        case Kind::Exp: return "exp";
        case Kind::Sqrt: return "sqrt";
        case Kind::Abs: return "abs";
        case Kind::Neg1Pow: return "neg1pow";
        default: return "?";
    }
}

}  // namespace

Expression::Expression() : Expression(constant(0.0)) {}

Expression Expression::constant(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = v;
    return Expression(std::move(n));
}

Expression Expression::variable() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    return Expression(std::move(n));
}

Expression Expression::unary(Kind k, Expression arg) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args.push_back(std::move(arg));
    return Expression(std::move(n));
}

Expression Expression::binary(Kind k, Expression lhs, Expression rhs) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args.push_back(std::move(lhs));
    n->args.push_back(std::move(rhs));
    return Expression(std::move(n));
}

Expression Expression::pow(Expression base, double exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->value = exponent;
    n->args.push_back(std::move(base));
    return Expression(std::move(n));
}

Expression Expression::mod(Expression arg, double modulus) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Mod;
    n->value = modulus;
    n->args.push_back(std::move(arg));
    return Expression(std::move(n));
}

Expression Expression::if_then_else(Cmp cmp, Expression lhs, double rhs, Expression then_e, Expression else_e) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::If;
    n->cmp = cmp;
    n->value = rhs;
    n->args = {std::move(lhs), std::move(then_e), std::move(else_e)};
    return Expression(std::move(n));
}

Expression Expression::non_differentiable(Expression arg, std::string what) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::NonDiff;
    n->note = std::move(what);
    n->args.push_back(std::move(arg));
    return Expression(std::move(n));
}

Expression::Kind Expression::kind() const noexcept { return node_->kind; }
double Expression::value() const noexcept { return node_->value; }
Cmp Expression::cmp() const noexcept { return node_->cmp; }
const std::vector<Expression>& Expression::args() const noexcept { return node_->args; }

bool Expression::is_constant() const noexcept {
    if (node_->kind == Kind::Variable) return false;
    for (const auto& a : node_->args) {
        if (!a.is_constant()) return false;
    }
    return true;
}

double Expression::operator()(double t) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Constant: return n.value;
        case Kind::Variable: return t;
        case Kind::Add: return n.args[0](t) + n.args[1](t);
        case Kind::Sub: return n.args[0](t) - n.args[1](t);
        case Kind::Mul: return n.args[0](t) * n.args[1](t);
        case Kind::Div: {
            const double den = n.args[1](t);
            if (den == 0.0) throw Error(ErrorCode::DomainError, "division by zero in " + to_string());
            return n.args[0](t) / den;
        }
        case Kind::Pow: {
            const double base = n.args[0](t);
            if (base == 0.0 && n.value < 0.0) {
                throw Error(ErrorCode::DomainError, "zero to a negative power in " + to_string());
            }
            const double r = std::pow(base, n.value);
            if (std::isnan(r)) throw Error(ErrorCode::DomainError, "negative base in " + to_string());
            return r;
        }
        case Kind::Neg: return -n.args[0](t);
        case Kind::Sin: return std::sin(n.args[0](t));
        case Kind::Cos: return std::cos(n.args[0](t));
        case Kind::Exp: return std::exp(n.args[0](t));
        case Kind::Sqrt: {
            const double x = n.args[0](t);
            if (x < 0.0) throw Error(ErrorCode::DomainError, "sqrt of negative value in " + to_string());
            return std::sqrt(x);
        }
        case Kind::Abs: return std::abs(n.args[0](t));
        case Kind::Mod: {
            if (n.value == 0.0) throw Error(ErrorCode::DomainError, "mod by zero");
            const double x = n.args[0](t);
            return x - n.value * std::floor(x / n.value);
        }
        case Kind::Neg1Pow: {
            const double x = n.args[0](t);
            const double r = std::round(x);
            if (!(std::abs(x - r) <= 1e-9)) {
                throw Error(ErrorCode::NonIntegerNeg1Pow, "neg1pow argument " + std::to_string(x) + " is not an integer");
            }
            return std::fmod(r, 2.0) == 0.0 ? 1.0 : -1.0;
        }
        case Kind::If: {
            const double lhs = n.args[0](t);
            const double c = n.value;
            const double tol = 1e-12 * std::max(1.0, std::abs(t));
            bool holds = false;
            switch (n.cmp) {
                case Cmp::Eq: holds = std::abs(lhs - c) <= tol; break;
                case Cmp::Lt: holds = lhs < c - tol; break;
                case Cmp::Le: holds = lhs <= c + tol; break;
                case Cmp::Gt: holds = lhs > c + tol; break;
                case Cmp::Ge: holds = lhs >= c - tol; break;
            }
            return holds ? n.args[1](t) : n.args[2](t);
        }
        case Kind::NonDiff:
            throw Error(ErrorCode::NonDifferentiableNode,
                        "derivative of " + n.note + " evaluated at t = " + std::to_string(t));
    }
    return 0.0;
}

std::string Expression::to_string() const {
    const Node& n = *node_;
    auto bin = [&](const char* op) {
        return "(" + n.args[0].to_string() + " " + op + " " + n.args[1].to_string() + ")";
    };
    switch (n.kind) {
        case Kind::Constant: return number_text(n.value);
        case Kind::Variable: return "t";
        case Kind::Add: return bin("+");
        case Kind::Sub: return bin("-");
        case Kind::Mul: return bin("*");
        case Kind::Div: return bin("/");
        case Kind::Pow: return "(" + n.args[0].to_string() + " ^ " + number_text(n.value) + ")";
        case Kind::Neg: return "(-(" + n.args[0].to_string() + "))";
        case Kind::Sin:
        case Kind::Cos:
        case Kind::Exp:
        case Kind::Sqrt:
        case Kind::Abs:
        case Kind::Neg1Pow: return std::string(func_name(n.kind)) + "(" + n.args[0].to_string() + ")";
        case Kind::Mod: return "mod(" + n.args[0].to_string() + ", " + number_text(n.value) + ")";
        case Kind::If:
            return std::string("if(") + cmp_name(n.cmp) + "(" + n.args[0].to_string() + ", " +
                   number_text(n.value) + "), " + n.args[1].to_string() + ", " + n.args[2].to_string() + ")";
        case Kind::NonDiff: return "nondiff(" + n.args[0].to_string() + ")";
    }
    return "?";
}

bool operator==(const Expression& l, const Expression& r) noexcept {
    if (l.node_ == r.node_) return true;
    const auto& a = *l.node_;
    const auto& b = *r.node_;
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    if (a.kind == Kind::If && a.cmp != b.cmp) return false;
    const bool has_value = a.kind == Kind::Constant || a.kind == Kind::Pow || a.kind == Kind::Mod || a.kind == Kind::If;
    if (has_value && a.value != b.value) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!(a.args[i] == b.args[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expression parse_all() {
        Expression e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

    [[noreturn]] void fail_at(std::size_t offset, const std::string& what) const {
        throw Error(ErrorCode::SyntaxError, what + " at offset " + std::to_string(offset));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
            fail(std::string("expected '") + c + "'");
        }
    }

    Expression expr() {
        Expression lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = Expression::binary(Kind::Add, lhs, term());
            } else if (accept('-')) {
                lhs = Expression::binary(Kind::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    Expression term() {
        Expression lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expression::binary(Kind::Mul, lhs, unary());
            } else if (accept('/')) {
                lhs = Expression::binary(Kind::Div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    Expression unary() {
        if (accept('-')) return Expression::unary(Kind::Neg, unary());
        return power();
    }

    Expression power() {
        Expression base = atom();
        skip_ws();
        const std::size_t at = pos_;
        if (accept('^')) {
            Expression ex = atom();
            if (!ex.is_constant()) {
                throw Error(ErrorCode::NonConstantExponent, "exponent must be constant at offset " + std::to_string(at));
            }
            return Expression::pow(base, ex(0.0));
        }
        return base;
    }

    std::string identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Expression number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
                pos_ = p;
            }
        }
        double v = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last) fail_at(start, "malformed number");
        return Expression::constant(v);
    }

    double constant_arg(const char* fname) {
        const std::size_t at = pos_;
        Expression e = expr();
        if (!e.is_constant()) {
            throw Error(ErrorCode::NonConstantArgument,
                        std::string(fname) + " needs a constant argument at offset " + std::to_string(at));
        }
        return e(0.0);
    }

    /// Reads the remaining arguments after '(' and checks the count.
    std::vector<Expression> args(const std::string& fname, std::size_t arity, std::size_t name_at) {
        std::vector<Expression> out;
        skip_ws();
        if (!accept(')')) {
            out.push_back(expr());
            while (accept(',')) out.push_back(expr());
            expect(')');
        }
        if (out.size() != arity) {
            throw Error(ErrorCode::ArityError, fname + " takes " + std::to_string(arity) + " argument(s), got " +
                                                   std::to_string(out.size()) + " at offset " + std::to_string(name_at));
        }
        return out;
    }

    Expression condition_then_else(std::size_t if_at) {
        skip_ws();
        const std::size_t at = pos_;
        const std::string name = identifier();
        Cmp cmp{};
        if (name == "eq") cmp = Cmp::Eq;
        else if (name == "lt") cmp = Cmp::Lt;
        else if (name == "le") cmp = Cmp::Le;
        else if (name == "gt") cmp = Cmp::Gt;
        else if (name == "ge") cmp = Cmp::Ge;
        else fail_at(at, "if needs a comparison eq/lt/le/gt/ge as its condition");
        expect('(');
        Expression lhs = expr();
        if (!accept(',')) {
            throw Error(ErrorCode::ArityError, name + " takes 2 arguments at offset " + std::to_string(at));
        }
        const double rhs = constant_arg(name.c_str());
        if (!accept(')')) {
            if (accept(',')) throw Error(ErrorCode::ArityError, name + " takes 2 arguments at offset " + std::to_string(at));
            fail("expected ')'");
        }
        std::vector<Expression> branches;
        while (accept(',')) branches.push_back(expr());
        expect(')');
        if (branches.size() != 2) {
            throw Error(ErrorCode::ArityError, "if takes 3 arguments at offset " + std::to_string(if_at));
        }
        return Expression::if_then_else(cmp, lhs, rhs, branches[0], branches[1]);
    }

    /// "(-2.5)" is the literal -2.5; anything else after "(-" is a negation.
    std::optional<Expression> signed_literal() {
        const std::size_t start = pos_;
        skip_ws();
        if (accept('-')) {
            skip_ws();
            if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                const Expression n = number();
                skip_ws();
                if (accept(')')) return Expression::constant(-n.value());
            }
        }
        pos_ = start;
        return std::nullopt;
    }

    Expression atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected an operand but input ended");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            if (auto literal = signed_literal()) return *literal;
            Expression e = expr();
            expect(')');
            return e;
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");

        const std::size_t at = pos_;
        const std::string name = identifier();
        if (name == "t") return Expression::variable();
        if (name == "pi") return Expression::constant(std::numbers::pi);

        static const std::pair<const char*, Kind> unary_funcs[] = {
            {"sin", Kind::Sin},   {"cos", Kind::Cos}, {"exp", Kind::Exp},
            {"sqrt", Kind::Sqrt}, {"abs", Kind::Abs}, {"neg1pow", Kind::Neg1Pow},
        };
        for (const auto& [fname, kind] : unary_funcs) {
            if (name == fname) {
                expect('(');
                auto a = args(name, 1, at);
                return Expression::unary(kind, a[0]);
            }
        }
        if (name == "mod") {
            expect('(');
            Expression arg = expr();
            if (!accept(',')) throw Error(ErrorCode::ArityError, "mod takes 2 arguments at offset " + std::to_string(at));
            const double m = constant_arg("mod");
            if (accept(',')) throw Error(ErrorCode::ArityError, "mod takes 2 arguments at offset " + std::to_string(at));
            expect(')');
            return Expression::mod(arg, m);
        }
        if (name == "if") {
            expect('(');
            return condition_then_else(at);
        }
        if (name == "eq" || name == "lt" || name == "le" || name == "gt" || name == "ge") {
            fail_at(at, "comparison '" + name + "' is only valid as the condition of if");
        }
        fail_at(at, "unknown identifier '" + name + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// Differentiation helpers with trivial constant folding to keep trees small.

bool is_const(const Expression& e, double v) { return e.kind() == Kind::Constant && e.value() == v; }

Expression add(Expression a, Expression b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return Expression::binary(Kind::Add, std::move(a), std::move(b));
}

Expression sub(Expression a, Expression b) {
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return Expression::unary(Kind::Neg, std::move(b));
    return Expression::binary(Kind::Sub, std::move(a), std::move(b));
}

Expression mul(Expression a, Expression b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return Expression::constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (a.kind() == Kind::Constant && b.kind() == Kind::Constant) return Expression::constant(a.value() * b.value());
    return Expression::binary(Kind::Mul, std::move(a), std::move(b));
}

Expression neg(Expression a) {
    if (a.kind() == Kind::Constant) return Expression::constant(-a.value());
    return Expression::unary(Kind::Neg, std::move(a));
}

}  // namespace

Expression parse_expression(std::string_view text) { return Parser(text).parse_all(); }

Expression differentiate(const Expression& e) {
    if (e.is_constant()) return Expression::constant(0.0);
    const auto& a = e.args();
    switch (e.kind()) {
        case Kind::Constant: return Expression::constant(0.0);
        case Kind::Variable: return Expression::constant(1.0);
        case Kind::Add: return add(differentiate(a[0]), differentiate(a[1]));
        case Kind::Sub: return sub(differentiate(a[0]), differentiate(a[1]));
        case Kind::Mul: return add(mul(differentiate(a[0]), a[1]), mul(a[0], differentiate(a[1])));
        case Kind::Div:
            return Expression::binary(Kind::Div,
                                      sub(mul(differentiate(a[0]), a[1]), mul(a[0], differentiate(a[1]))),
                                      Expression::pow(a[1], 2.0));
        case Kind::Pow: {
            const double c = e.value();
            Expression inner = c - 1.0 == 0.0   ? Expression::constant(1.0)
                               : c - 1.0 == 1.0 ? a[0]
                                                : Expression::pow(a[0], c - 1.0);
            return mul(mul(Expression::constant(c), inner), differentiate(a[0]));
        }
        case Kind::Neg: return neg(differentiate(a[0]));
        case Kind::Sin: return mul(Expression::unary(Kind::Cos, a[0]), differentiate(a[0]));
        case Kind::Cos: return neg(mul(Expression::unary(Kind::Sin, a[0]), differentiate(a[0])));
        case Kind::Exp: return mul(e, differentiate(a[0]));
        case Kind::Sqrt:
            return Expression::binary(Kind::Div, differentiate(a[0]), mul(Expression::constant(2.0), e));
        case Kind::Abs:
            return mul(differentiate(a[0]), Expression::binary(Kind::Div, a[0], e));
        case Kind::If:
            return Expression::if_then_else(e.cmp(), a[0], e.value(), differentiate(a[1]), differentiate(a[2]));
        case Kind::Mod: return Expression::non_differentiable(e, "mod");
        case Kind::Neg1Pow: return Expression::non_differentiable(e, "neg1pow");
        case Kind::NonDiff: return e;
    }
    return Expression::constant(0.0);
}

}  // namespace tsfloquet

#include "flowem/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace flowem {

namespace {

const char* var_name(int var) {
    switch (var) {
        case 0: return "t";
        case 1: return "x0";
        case 2: return "y0";
        default: return "z0";
    }
}

const char* unary_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "-";
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Sqrt: return "sqrt";
        default: return "log";
    }
}

char binary_char(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return '+';
        case BinaryOp::Sub: return '-';
        case BinaryOp::Mul: return '*';
        default: return '/';
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, StarStar, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    size_t pos = 0;
    double number = 0.0;
    std::string ident;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& current() const { return tok_; }

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.pos = pos_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            const char* end = src_.data() + src_.size();
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc{} || ptr == begin)
                throw ParseError("malformed number", pos_);
            tok_.kind = Tok::Number;
            tok_.number = value;
            pos_ += static_cast<size_t>(ptr - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            tok_.kind = Tok::Ident;
            tok_.ident = std::string(src_.substr(pos_, end - pos_));
            pos_ = end;
            return;
        }
        switch (c) {
            case '+': tok_.kind = Tok::Plus; ++pos_; return;
            case '-': tok_.kind = Tok::Minus; ++pos_; return;
            case '*':
                if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                    tok_.kind = Tok::StarStar;
                    pos_ += 2;
                } else {
                    tok_.kind = Tok::Star;
                    ++pos_;
                }
                return;
            case '/': tok_.kind = Tok::Slash; ++pos_; return;
            case '(': tok_.kind = Tok::LParen; ++pos_; return;
            case ')': tok_.kind = Tok::RParen; ++pos_; return;
            default: throw ParseError(std::string("unexpected character '") + c + "'", pos_);
        }
    }

  private:
    std::string_view src_;
    size_t pos_ = 0;
    Token tok_;
};

// ---------------------------------------------------------------------------
// Recursive-descent parser
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('**' number)?
//   base   := number | ident | ident '(' expr ')' | '(' expr ')' | '-' base
// ---------------------------------------------------------------------------

class Parser {
  public:
    Parser(std::string_view src, const std::set<std::string>& params)
        : lex_(src), params_(params) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        if (lex_.current().kind != Tok::End)
            throw ParseError("trailing input, expected end of expression", lex_.current().pos);
        return e;
    }

  private:
    Lexer lex_;
    const std::set<std::string>& params_;

    bool accept(Tok kind) {
        if (lex_.current().kind != kind) return false;
        lex_.advance();
        return true;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (accept(Tok::Plus)) e = make_binary(BinaryOp::Add, e, term());
            else if (accept(Tok::Minus)) e = make_binary(BinaryOp::Sub, e, term());
            else return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (accept(Tok::Star)) e = make_binary(BinaryOp::Mul, e, factor());
            else if (accept(Tok::Slash)) e = make_binary(BinaryOp::Div, e, factor());
            else return e;
        }
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (accept(Tok::StarStar)) {
            double sign = 1.0;
            if (accept(Tok::Minus)) sign = -1.0;
            if (lex_.current().kind != Tok::Number)
                throw ParseError("non-constant exponent in pow (expected number after '**')",
                                 lex_.current().pos);
            const double p = sign * lex_.current().number;
            lex_.advance();
            return make_pow(b, p);
        }
        return b;
    }

    ExprPtr base() {
        const Token tok = lex_.current();
        switch (tok.kind) {
            case Tok::Number:
                lex_.advance();
                return make_constant(tok.number);
            case Tok::Minus:
                lex_.advance();
                return make_unary(UnaryOp::Neg, base());
            case Tok::LParen: {
                lex_.advance();
                ExprPtr e = expr();
                if (!accept(Tok::RParen)) throw ParseError("expected ')'", lex_.current().pos);
                return e;
            }
            case Tok::Ident: {
                lex_.advance();
                if (lex_.current().kind == Tok::LParen) return call(tok);
                if (tok.ident == "t") return make_var(0);
                if (tok.ident == "x0") return make_var(1);
                if (tok.ident == "y0") return make_var(2);
                if (tok.ident == "z0") return make_var(3);
                if (params_.count(tok.ident)) return make_param(tok.ident);
                throw ParseError("unknown identifier '" + tok.ident + "'", tok.pos);
            }
            default:
                throw ParseError("expected number, identifier, '(' or '-'", tok.pos);
        }
    }

    ExprPtr call(const Token& name) {
        UnaryOp op;
        if (name.ident == "sin") op = UnaryOp::Sin;
        else if (name.ident == "cos") op = UnaryOp::Cos;
        else if (name.ident == "exp") op = UnaryOp::Exp;
        else if (name.ident == "sqrt") op = UnaryOp::Sqrt;
        else if (name.ident == "log") op = UnaryOp::Log;
        else throw ParseError("unknown function '" + name.ident + "'", name.pos);
        lex_.advance();  // '('
        ExprPtr arg = expr();
        if (!accept(Tok::RParen)) throw ParseError("expected ')'", lex_.current().pos);
        return make_unary(op, arg);
    }
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

// Precedence levels: add/sub = 1, mul/div = 2, unary = 3, pow = 4, atom = 5.
int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Binary:
            return (e.bop == BinaryOp::Add || e.bop == BinaryOp::Sub) ? 1 : 2;
        case Expr::Kind::Unary:
            return e.uop == UnaryOp::Neg ? 3 : 5;
        case Expr::Kind::Pow:
            return 4;
        default:
            return 5;
    }
}

void print_rec(const ExprPtr& e, int parent_prec, bool right_side, std::string& out) {
    const int prec = precedence(*e);
    const bool parens = prec < parent_prec || (prec == parent_prec && right_side);
    if (parens) out += '(';
    switch (e->kind) {
        case Expr::Kind::Constant:
            out += format_double(e->value);
            break;
        case Expr::Kind::Var:
            out += var_name(e->var);
            break;
        case Expr::Kind::Param:
            out += e->name;
            break;
        case Expr::Kind::Unary:
            if (e->uop == UnaryOp::Neg) {
                out += '-';
                print_rec(e->lhs, 3, true, out);
            } else {
                out += unary_name(e->uop);
                out += '(';
                print_rec(e->lhs, 0, false, out);
                out += ')';
            }
            break;
        case Expr::Kind::Binary: {
            const int p = precedence(*e);
            print_rec(e->lhs, p, false, out);
            out += ' ';
            out += binary_char(e->bop);
            out += ' ';
            print_rec(e->rhs, p, true, out);
            break;
        }
        case Expr::Kind::Pow:
            print_rec(e->lhs, 5, false, out);  // base binds tighter than '**'
            out += " ** ";
            out += format_double(e->value);
            break;
    }
    if (parens) out += ')';
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

[[noreturn]] void domain_error(const char* message, const ExprPtr& node) {
    throw ExprDomainError(message, print_expr(node));
}

double param_value(const Expr& e, const ParamMap& params) {
    auto it = params.find(e.name);
    if (it == params.end())
        throw ExprDomainError("unbound parameter", e.name);
    return it->second;
}

Jet3 eval_jet_rec(const ExprPtr& node, double t, const Vec3& r0, const ParamMap& params) {
    const Expr& e = *node;
    switch (e.kind) {
        case Expr::Kind::Constant:
            return Jet3::constant(e.value);
        case Expr::Kind::Var:
            switch (e.var) {
                case 0: return Jet3::time(t);
                case 1: return Jet3::constant(r0.x);
                case 2: return Jet3::constant(r0.y);
                default: return Jet3::constant(r0.z);
            }
        case Expr::Kind::Param:
            return Jet3::constant(param_value(e, params));
        case Expr::Kind::Unary: {
            const Jet3 f = eval_jet_rec(e.lhs, t, r0, params);
            Jet3 result;
            switch (e.uop) {
                case UnaryOp::Neg: result = -f; break;
                case UnaryOp::Sin: result = sin(f); break;
                case UnaryOp::Cos: result = cos(f); break;
                case UnaryOp::Exp: result = exp(f); break;
                case UnaryOp::Sqrt:
                    if (f.v < 0.0) domain_error("sqrt of negative value", node);
                    if (f.v == 0.0) {
                        if (f.d1 == 0.0 && f.d2 == 0.0 && f.d3 == 0.0) return Jet3::constant(0.0);
                        domain_error("sqrt at zero is not differentiable", node);
                    }
                    result = sqrt(f);
                    break;
                case UnaryOp::Log:
                    if (f.v <= 0.0) domain_error("log of non-positive value", node);
                    result = log(f);
                    break;
            }
            if (!isfinite(result)) domain_error("non-finite value", node);
            return result;
        }
        case Expr::Kind::Binary: {
            const Jet3 a = eval_jet_rec(e.lhs, t, r0, params);
            const Jet3 b = eval_jet_rec(e.rhs, t, r0, params);
            Jet3 result;
            switch (e.bop) {
                case BinaryOp::Add: result = a + b; break;
                case BinaryOp::Sub: result = a - b; break;
                case BinaryOp::Mul: result = a * b; break;
                case BinaryOp::Div:
                    if (b.v == 0.0) domain_error("division by zero", node);
                    result = a / b;
                    break;
            }
            if (!isfinite(result)) domain_error("non-finite value", node);
            return result;
        }
        case Expr::Kind::Pow: {
            const Jet3 f = eval_jet_rec(e.lhs, t, r0, params);
            const double p = e.value;
            const bool integral = (p == std::floor(p) && std::abs(p) <= 64.0);
            if (integral) {
                if (p < 0.0 && f.v == 0.0) domain_error("zero base with negative exponent", node);
            } else if (f.v <= 0.0) {
                domain_error("non-integer power of non-positive base", node);
            }
            const Jet3 result = pow(f, p);
            if (!isfinite(result)) domain_error("non-finite value", node);
            return result;
        }
    }
    domain_error("malformed expression node", node);
}

double eval_value_rec(const ExprPtr& node, double t, const Vec3& r0, const ParamMap& params) {
    const Expr& e = *node;
    switch (e.kind) {
        case Expr::Kind::Constant:
            return e.value;
        case Expr::Kind::Var:
            switch (e.var) {
                case 0: return t;
                case 1: return r0.x;
                case 2: return r0.y;
                default: return r0.z;
            }
        case Expr::Kind::Param:
            return param_value(e, params);
        case Expr::Kind::Unary: {
            const double f = eval_value_rec(e.lhs, t, r0, params);
            double result = 0.0;
            switch (e.uop) {
                case UnaryOp::Neg: result = -f; break;
                case UnaryOp::Sin: result = std::sin(f); break;
                case UnaryOp::Cos: result = std::cos(f); break;
                case UnaryOp::Exp: result = std::exp(f); break;
                case UnaryOp::Sqrt:
                    if (f < 0.0) domain_error("sqrt of negative value", node);
                    result = std::sqrt(f);
                    break;
                case UnaryOp::Log:
                    if (f <= 0.0) domain_error("log of non-positive value", node);
                    result = std::log(f);
                    break;
            }
            if (!std::isfinite(result)) domain_error("non-finite value", node);
            return result;
        }
        case Expr::Kind::Binary: {
            const double a = eval_value_rec(e.lhs, t, r0, params);
            const double b = eval_value_rec(e.rhs, t, r0, params);
            double result = 0.0;
            switch (e.bop) {
                case BinaryOp::Add: result = a + b; break;
                case BinaryOp::Sub: result = a - b; break;
                case BinaryOp::Mul: result = a * b; break;
                case BinaryOp::Div:
                    if (b == 0.0) domain_error("division by zero", node);
                    result = a / b;
                    break;
            }
            if (!std::isfinite(result)) domain_error("non-finite value", node);
            return result;
        }
        case Expr::Kind::Pow: {
            const double f = eval_value_rec(e.lhs, t, r0, params);
            const double p = e.value;
            const bool integral = (p == std::floor(p) && std::abs(p) <= 64.0);
            if (integral) {
                if (p < 0.0 && f == 0.0) domain_error("zero base with negative exponent", node);
            } else if (f <= 0.0) {
                domain_error("non-integer power of non-positive base", node);
            }
            const double result = std::pow(f, p);
            if (!std::isfinite(result)) domain_error("non-finite value", node);
            return result;
        }
    }
    domain_error("malformed expression node", node);
}

}  // namespace

ExprPtr make_constant(double c) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Constant;
    e->value = c;
    return e;
}

ExprPtr make_var(int var) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Var;
    e->var = var;
    return e;
}

ExprPtr make_param(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Param;
    e->name = std::move(name);
    return e;
}

ExprPtr make_unary(UnaryOp op, ExprPtr child) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Unary;
    e->uop = op;
    e->lhs = std::move(child);
    return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->bop = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

ExprPtr make_pow(ExprPtr base, double exponent) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Pow;
    e->lhs = std::move(base);
    e->value = exponent;
    return e;
}

ExprPtr parse_expr(std::string_view src, const std::set<std::string>& params) {
    return Parser(src, params).parse();
}

std::string print_expr(const ExprPtr& ast) {
    std::string out;
    print_rec(ast, 0, false, out);
    return out;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::Constant: return a->value == b->value;
        case Expr::Kind::Var: return a->var == b->var;
        case Expr::Kind::Param: return a->name == b->name;
        case Expr::Kind::Unary: return a->uop == b->uop && expr_equal(a->lhs, b->lhs);
        case Expr::Kind::Binary:
            return a->bop == b->bop && expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
        case Expr::Kind::Pow: return a->value == b->value && expr_equal(a->lhs, b->lhs);
    }
    return false;
}

bool depends_on_time(const ExprPtr& ast) {
    if (!ast) return false;
    switch (ast->kind) {
        case Expr::Kind::Var: return ast->var == 0;
        case Expr::Kind::Unary:
        case Expr::Kind::Pow: return depends_on_time(ast->lhs);
        case Expr::Kind::Binary: return depends_on_time(ast->lhs) || depends_on_time(ast->rhs);
        default: return false;
    }
}

Jet3 eval_jet3(const ExprPtr& ast, double t, const Vec3& r0, const ParamMap& params) {
    return eval_jet_rec(ast, t, r0, params);
}

double eval_value(const ExprPtr& ast, double t, const Vec3& r0, const ParamMap& params) {
    return eval_value_rec(ast, t, r0, params);
}

}  // namespace flowem

#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "flowem/errors.hpp"
#include "flowem/geometry.hpp"
#include "flowem/jet.hpp"

namespace flowem {

enum class UnaryOp { Neg, Sin, Cos, Exp, Sqrt, Log };
enum class BinaryOp { Add, Sub, Mul, Div };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over the variables t, x0, y0, z0 and declared
/// parameters.  Shared freely across threads once built.
struct Expr {
    enum class Kind { Constant, Var, Param, Unary, Binary, Pow };

    Kind kind = Kind::Constant;
    double value = 0.0;      // Constant payload; Pow exponent
    int var = 0;             // Var payload: 0 = t, 1 = x0, 2 = y0, 3 = z0
    std::string name;        // Param payload
    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    ExprPtr lhs;             // Unary child; Pow base
    ExprPtr rhs;
};

ExprPtr make_constant(double c);
ExprPtr make_var(int var);  // 0 = t, 1 = x0, 2 = y0, 3 = z0
ExprPtr make_param(std::string name);
ExprPtr make_unary(UnaryOp op, ExprPtr child);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_pow(ExprPtr base, double exponent);

/// Parse `src` against the expression grammar.  `params` lists declared
/// parameter names; any other identifier (beyond t, x0, y0, z0 and the
/// function names) is rejected.  Throws ParseError with the offset of the
/// offending token.
ExprPtr parse_expr(std::string_view src, const std::set<std::string>& params = {});

/// Precedence-aware rendering. parse(print(ast)) reproduces the tree
/// structurally; constants print with 17 significant digits so doubles
/// round-trip exactly.
std::string print_expr(const ExprPtr& ast);

/// Structural equality.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// True if the tree references the time variable.
bool depends_on_time(const ExprPtr& ast);

/// Bindings for parameter names used during evaluation.
using ParamMap = std::map<std::string, double>;

/// Value and exact t-derivatives of the expression at (t, r0).
/// Throws ExprDomainError naming the offending subexpression on division by
/// zero, sqrt/log outside their domains, or non-finite intermediates.
Jet3 eval_jet3(const ExprPtr& ast, double t, const Vec3& r0, const ParamMap& params);

/// Value-only evaluation (same domain checks, no derivative propagation).
double eval_value(const ExprPtr& ast, double t, const Vec3& r0, const ParamMap& params);

}  // namespace flowem

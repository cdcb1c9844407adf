#ifndef CALABI_EXPR_HPP
#define CALABI_EXPR_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "calabi/errors.hpp"

namespace calabi {

enum class UnaryOp { Neg, Ln, Exp, Sqrt, Sin, Cos, Sinh, Cosh };
enum class BinaryOp { Add, Sub, Mul, Div };

// Immutable expression tree node. Pow is kept apart from the other binary
// operators because its exponent is restricted to a literal constant,
// which keeps fourth-order differentiation closed-form.
struct ExprNode {
  enum class Kind { Constant, Variable, Unary, Binary, Pow };

  Kind kind;
  double constant = 0.0;  // Constant
  int var_index = 0;      // Variable, 1-based
  UnaryOp uop = UnaryOp::Neg;
  BinaryOp bop = BinaryOp::Add;
  double exponent = 0.0;  // Pow
  std::shared_ptr<const ExprNode> lhs;  // operand (Unary, Pow) or left operand
  std::shared_ptr<const ExprNode> rhs;
};

using ExprHandle = std::shared_ptr<const ExprNode>;

// An expression together with the dimension it was declared for.
// Immutable after construction; evaluation is pure.
class Expression {
 public:
  Expression() = default;
  Expression(int dim, ExprHandle root) : dim_(dim), root_(std::move(root)) {}

  int dim() const { return dim_; }
  const ExprHandle& root() const { return root_; }
  bool empty() const { return root_ == nullptr; }

 private:
  int dim_ = 0;
  ExprHandle root_;
};

// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := unary (("*"|"/") unary)*
//   unary  := "-" unary | factor
//   factor := base ("^" literal)?        (literal may carry a sign)
//   base   := literal | ident | "(" expr ")" | func "(" expr ")"
//   func   := ln | exp | sqrt | sin | cos | sinh | cosh
//   ident  := ("x"|"u") digits | "t"     ("t" is variable 1)
// Whitespace is insignificant. Precedence: ^  >  unary -  >  * /  >  + -.
Expression parse(const std::string& source, int dim);

// Prints a form that re-parses to a structurally identical tree.
std::string to_string(const Expression& expr);
std::string to_string(const ExprNode& node);

bool structurally_equal(const Expression& a, const Expression& b);

// Plain tree-walk evaluation. Domain violations (log/sqrt of a
// non-positive argument, division by zero) throw EvalError naming the
// offending subtree.
double evaluate(const Expression& expr, std::span<const double> point);
long double evaluate_ld(const Expression& expr, std::span<const long double> point);

// Open set {x : h_k(x) > 0 for all k}. An empty constraint list means
// all of R^n.
class Domain {
 public:
  Domain() = default;
  explicit Domain(std::vector<Expression> constraints) : constraints_(std::move(constraints)) {}

  const std::vector<Expression>& constraints() const { return constraints_; }

  bool contains(std::span<const double> point) const;
  // min_k h_k(point); +infinity when unconstrained. Points where a
  // constraint fails to evaluate report -infinity.
  double margin(std::span<const double> point) const;

 private:
  std::vector<Expression> constraints_;
};

// Strictly convex function on an open domain. Convexity is checked where
// it matters (metric construction), not assumed here.
struct ConvexFunction {
  int dim = 0;
  Expression body;
  Domain domain;
  std::string name;
  std::string source;  // original body text when built from the parser
};

}  // namespace calabi

#endif

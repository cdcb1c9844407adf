#include "calabi/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace calabi {

namespace {

ExprHandle make_constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Constant;
  n->constant = v;
  return n;
}

ExprHandle make_variable(int index) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Variable;
  n->var_index = index;
  return n;
}

ExprHandle make_unary(UnaryOp op, ExprHandle operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Unary;
  n->uop = op;
  n->lhs = std::move(operand);
  return n;
}

ExprHandle make_binary(BinaryOp op, ExprHandle l, ExprHandle r) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Binary;
  n->bop = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

ExprHandle make_pow(ExprHandle base, double exponent) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Pow;
  n->exponent = exponent;
  n->lhs = std::move(base);
  return n;
}

class Parser {
 public:
  Parser(const std::string& src, int dim) : src_(src), dim_(dim) {
    if (dim < 1) throw InvalidArgument("dimension must be positive");
  }

  ExprHandle run() {
    skip_ws();
    ExprHandle e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  ExprHandle parse_expr() {
    ExprHandle e = parse_term();
    for (;;) {
      if (eat('+')) {
        e = make_binary(BinaryOp::Add, e, parse_term());
      } else if (eat('-')) {
        e = make_binary(BinaryOp::Sub, e, parse_term());
      } else {
        return e;
      }
    }
  }

  ExprHandle parse_term() {
    ExprHandle e = parse_unary();
    for (;;) {
      if (eat('*')) {
        e = make_binary(BinaryOp::Mul, e, parse_unary());
      } else if (eat('/')) {
        e = make_binary(BinaryOp::Div, e, parse_unary());
      } else {
        return e;
      }
    }
  }

  ExprHandle parse_unary() {
    if (eat('-')) return make_unary(UnaryOp::Neg, parse_unary());
    return parse_factor();
  }

  ExprHandle parse_factor() {
    ExprHandle base = parse_base();
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '^') {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      double sign = 1.0;
      if (pos_ < src_.size() && src_[pos_] == '-') {
        sign = -1.0;
        ++pos_;
        skip_ws();
      }
      if (pos_ >= src_.size() || !(std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        throw ParseError("exponent must be a constant literal", at);
      return make_pow(std::move(base), sign * parse_number());
    }
    return base;
  }

  ExprHandle parse_base() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return make_constant(parse_number());
    if (c == '(') {
      ++pos_;
      ExprHandle e = parse_expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  double parse_number() {
    const std::size_t at = pos_;
    std::size_t p = pos_;
    while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
    if (p < src_.size() && src_[p] == '.') {
      ++p;
      while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
    }
    if (p == at || (p == at + 1 && src_[at] == '.')) throw ParseError("malformed number", at);
    if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      std::size_t digits = q;
      while (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) ++q;
      if (q > digits) p = q;  // exponent part only if it has digits
    }
    const std::string text = src_.substr(at, p - at);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == nullptr || *end != '\0') throw ParseError("malformed number", at);
    pos_ = p;
    return v;
  }

  ExprHandle parse_ident() {
    const std::size_t at = pos_;
    std::size_t p = pos_;
    while (p < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[p])))) ++p;
    const std::string name = src_.substr(at, p - at);
    pos_ = p;

    if (name == "t") return check_var(1, at);
    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'u')) {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
      if (digits) return check_var(std::atoi(name.c_str() + 1), at);
    }

    static const std::pair<const char*, UnaryOp> funcs[] = {
        {"ln", UnaryOp::Ln},   {"exp", UnaryOp::Exp},   {"sqrt", UnaryOp::Sqrt}, {"sin", UnaryOp::Sin},
        {"cos", UnaryOp::Cos}, {"sinh", UnaryOp::Sinh}, {"cosh", UnaryOp::Cosh}};
    for (const auto& [fname, op] : funcs) {
      if (name == fname) {
        if (!eat('(')) throw ParseError("expected '(' after function name", pos_);
        ExprHandle arg = parse_expr();
        if (!eat(')')) throw ParseError("expected ')'", pos_);
        return make_unary(op, std::move(arg));
      }
    }
    throw ParseError("unknown identifier '" + name + "'", at);
  }

  ExprHandle check_var(int index, std::size_t at) {
    if (index < 1 || index > dim_)
      throw ParseError("variable index out of range for dimension " + std::to_string(dim_), at);
    return make_variable(index);
  }

  const std::string& src_;
  int dim_;
  std::size_t pos_ = 0;
};

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Constant:
    case ExprNode::Kind::Variable:
      return 5;
    case ExprNode::Kind::Pow:
      return 4;
    case ExprNode::Kind::Unary:
      return n.uop == UnaryOp::Neg ? 3 : 5;  // named functions print their own parens
    case ExprNode::Kind::Binary:
      return (n.bop == BinaryOp::Mul || n.bop == BinaryOp::Div) ? 2 : 1;
  }
  return 0;
}

std::string format_literal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_node(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, int parent_prec, bool needs_paren_on_tie, std::string& out) {
  const bool paren = precedence(child) < parent_prec || (needs_paren_on_tie && precedence(child) == parent_prec);
  if (paren) out += '(';
  print_node(child, out);
  if (paren) out += ')';
}

void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      out += format_literal(n.constant);
      return;
    case ExprNode::Kind::Variable:
      out += "x" + std::to_string(n.var_index);
      return;
    case ExprNode::Kind::Pow: {
      // base must be atomic or parenthesized; negative literals count as
      // non-atomic ("-2^2" would re-parse as -(2^2))
      const bool negative_literal = n.lhs->kind == ExprNode::Kind::Constant && n.lhs->constant < 0.0;
      if (negative_literal) {
        out += '(';
        print_node(*n.lhs, out);
        out += ')';
      } else {
        print_child(*n.lhs, 5, false, out);
      }
      out += '^';
      out += format_literal(n.exponent);
      return;
    }
    case ExprNode::Kind::Unary:
      switch (n.uop) {
        case UnaryOp::Neg:
          out += '-';
          print_child(*n.lhs, 3, false, out);
          return;
        case UnaryOp::Ln: out += "ln"; break;
        case UnaryOp::Exp: out += "exp"; break;
        case UnaryOp::Sqrt: out += "sqrt"; break;
        case UnaryOp::Sin: out += "sin"; break;
        case UnaryOp::Cos: out += "cos"; break;
        case UnaryOp::Sinh: out += "sinh"; break;
        case UnaryOp::Cosh: out += "cosh"; break;
      }
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      return;
    case ExprNode::Kind::Binary: {
      const int prec = precedence(n);
      const char* op = nullptr;
      bool tie_right = false;
      switch (n.bop) {
        case BinaryOp::Add: op = " + "; break;
        case BinaryOp::Sub: op = " - "; tie_right = true; break;
        case BinaryOp::Mul: op = "*"; break;
        case BinaryOp::Div: op = "/"; tie_right = true; break;
      }
      print_child(*n.lhs, prec, false, out);
      out += op;
      print_child(*n.rhs, prec, tie_right, out);
      return;
    }
  }
}

template <typename T>
T eval_node(const ExprNode& n, std::span<const T> point) {
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      return static_cast<T>(n.constant);
    case ExprNode::Kind::Variable:
      return point[static_cast<std::size_t>(n.var_index - 1)];
    case ExprNode::Kind::Unary: {
      const T v = eval_node(*n.lhs, point);
      switch (n.uop) {
        case UnaryOp::Neg: return -v;
        case UnaryOp::Ln:
          if (!(v > T(0))) throw EvalError("ln of non-positive argument in " + to_string(n));
          return std::log(v);
        case UnaryOp::Exp: return std::exp(v);
        case UnaryOp::Sqrt:
          if (!(v > T(0))) throw EvalError("sqrt of non-positive argument in " + to_string(n));
          return std::sqrt(v);
        case UnaryOp::Sin: return std::sin(v);
        case UnaryOp::Cos: return std::cos(v);
        case UnaryOp::Sinh: return std::sinh(v);
        case UnaryOp::Cosh: return std::cosh(v);
      }
      return T(0);
    }
    case ExprNode::Kind::Binary: {
      const T a = eval_node(*n.lhs, point);
      const T b = eval_node(*n.rhs, point);
      switch (n.bop) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div:
          if (b == T(0)) throw EvalError("division by zero in " + to_string(n));
          return a / b;
      }
      return T(0);
    }
    case ExprNode::Kind::Pow: {
      const T base = eval_node(*n.lhs, point);
      const double e = n.exponent;
      if (e == 0.0) return T(1);
      const bool integral = (e == std::floor(e)) && std::abs(e) <= 1024.0;
      if (integral) {
        if (base == T(0) && e < 0.0) throw EvalError("zero raised to negative power in " + to_string(n));
        return std::pow(base, static_cast<int>(e));
      }
      if (!(base > T(0))) throw EvalError("fractional power of non-positive base in " + to_string(n));
      return std::pow(base, static_cast<T>(e));
    }
  }
  return T(0);
}

}  // namespace

Expression parse(const std::string& source, int dim) {
  Parser p(source, dim);
  return Expression(dim, p.run());
}

std::string to_string(const ExprNode& node) {
  std::string out;
  print_node(node, out);
  return out;
}

std::string to_string(const Expression& expr) {
  if (expr.empty()) return {};
  return to_string(*expr.root());
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::Constant:
      return a.constant == b.constant;
    case ExprNode::Kind::Variable:
      return a.var_index == b.var_index;
    case ExprNode::Kind::Unary:
      return a.uop == b.uop && structurally_equal(*a.lhs, *b.lhs);
    case ExprNode::Kind::Binary:
      return a.bop == b.bop && structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    case ExprNode::Kind::Pow:
      return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
  }
  return false;
}

bool structurally_equal(const Expression& a, const Expression& b) {
  if (a.dim() != b.dim()) return false;
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return structurally_equal(*a.root(), *b.root());
}

double evaluate(const Expression& expr, std::span<const double> point) {
  if (static_cast<int>(point.size()) != expr.dim())
    throw InvalidArgument("point length does not match expression dimension");
  return eval_node<double>(*expr.root(), point);
}

long double evaluate_ld(const Expression& expr, std::span<const long double> point) {
  if (static_cast<int>(point.size()) != expr.dim())
    throw InvalidArgument("point length does not match expression dimension");
  return eval_node<long double>(*expr.root(), point);
}

bool Domain::contains(std::span<const double> point) const {
  for (const Expression& h : constraints_) {
    double v;
    try {
      v = evaluate(h, point);
    } catch (const EvalError&) {
      return false;
    }
    if (!(v > 0.0)) return false;
  }
  return true;
}

double Domain::margin(std::span<const double> point) const {
  double m = std::numeric_limits<double>::infinity();
  for (const Expression& h : constraints_) {
    double v;
    try {
      v = evaluate(h, point);
    } catch (const EvalError&) {
      return -std::numeric_limits<double>::infinity();
    }
    m = std::min(m, v);
  }
  return m;
}

}  // namespace calabi

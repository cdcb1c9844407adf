#ifndef CALABI_TESTS_STACK_EVAL_HPP
#define CALABI_TESTS_STACK_EVAL_HPP

// Test-only oracle: compiles an expression to a postfix program and runs it
// on an explicit stack. Post-order matches the tree walk operation for
// operation, so results must agree to the last bit.

#include <cmath>
#include <vector>

#include "calabi/expr.hpp"

namespace calabi::testing {

struct StackOp {
  enum class Code { PushConst, PushVar, Neg, Ln, Exp, Sqrt, Sin, Cos, Sinh, Cosh, Add, Sub, Mul, Div, Pow };
  Code code;
  double value = 0.0;  // constant or exponent
  int var = 0;
};

class StackProgram {
 public:
  explicit StackProgram(const Expression& expr) { compile(*expr.root()); }

  double run(std::span<const double> point) const {
    std::vector<double> stack;
    stack.reserve(16);
    for (const StackOp& op : ops_) {
      switch (op.code) {
        case StackOp::Code::PushConst: stack.push_back(op.value); break;
        case StackOp::Code::PushVar: stack.push_back(point[static_cast<std::size_t>(op.var - 1)]); break;
        case StackOp::Code::Neg: stack.back() = -stack.back(); break;
        case StackOp::Code::Ln: stack.back() = std::log(stack.back()); break;
        case StackOp::Code::Exp: stack.back() = std::exp(stack.back()); break;
        case StackOp::Code::Sqrt: stack.back() = std::sqrt(stack.back()); break;
        case StackOp::Code::Sin: stack.back() = std::sin(stack.back()); break;
        case StackOp::Code::Cos: stack.back() = std::cos(stack.back()); break;
        case StackOp::Code::Sinh: stack.back() = std::sinh(stack.back()); break;
        case StackOp::Code::Cosh: stack.back() = std::cosh(stack.back()); break;
        case StackOp::Code::Pow: {
          const double base = stack.back();
          const double e = op.value;
          double r;
          if (e == 0.0) {
            r = 1.0;
          } else if (e == std::floor(e) && std::abs(e) <= 1024.0) {
            r = std::pow(base, static_cast<int>(e));
          } else {
            r = std::pow(base, e);
          }
          stack.back() = r;
          break;
        }
        default: {
          const double b = stack.back();
          stack.pop_back();
          const double a = stack.back();
          switch (op.code) {
            case StackOp::Code::Add: stack.back() = a + b; break;
            case StackOp::Code::Sub: stack.back() = a - b; break;
            case StackOp::Code::Mul: stack.back() = a * b; break;
            case StackOp::Code::Div: stack.back() = a / b; break;
            default: break;
          }
        }
      }
    }
    return stack.back();
  }

 private:
  void compile(const ExprNode& n) {
    switch (n.kind) {
      case ExprNode::Kind::Constant:
        ops_.push_back({StackOp::Code::PushConst, n.constant, 0});
        break;
      case ExprNode::Kind::Variable:
        ops_.push_back({StackOp::Code::PushVar, 0.0, n.var_index});
        break;
      case ExprNode::Kind::Unary:
        compile(*n.lhs);
        switch (n.uop) {
          case UnaryOp::Neg: ops_.push_back({StackOp::Code::Neg, 0.0, 0}); break;
          case UnaryOp::Ln: ops_.push_back({StackOp::Code::Ln, 0.0, 0}); break;
          case UnaryOp::Exp: ops_.push_back({StackOp::Code::Exp, 0.0, 0}); break;
          case UnaryOp::Sqrt: ops_.push_back({StackOp::Code::Sqrt, 0.0, 0}); break;
          case UnaryOp::Sin: ops_.push_back({StackOp::Code::Sin, 0.0, 0}); break;
          case UnaryOp::Cos: ops_.push_back({StackOp::Code::Cos, 0.0, 0}); break;
          case UnaryOp::Sinh: ops_.push_back({StackOp::Code::Sinh, 0.0, 0}); break;
          case UnaryOp::Cosh: ops_.push_back({StackOp::Code::Cosh, 0.0, 0}); break;
        }
        break;
      case ExprNode::Kind::Binary:
        compile(*n.lhs);
        compile(*n.rhs);
        switch (n.bop) {
          case BinaryOp::Add: ops_.push_back({StackOp::Code::Add, 0.0, 0}); break;
          case BinaryOp::Sub: ops_.push_back({StackOp::Code::Sub, 0.0, 0}); break;
          case BinaryOp::Mul: ops_.push_back({StackOp::Code::Mul, 0.0, 0}); break;
          case BinaryOp::Div: ops_.push_back({StackOp::Code::Div, 0.0, 0}); break;
        }
        break;
      case ExprNode::Kind::Pow:
        compile(*n.lhs);
        ops_.push_back({StackOp::Code::Pow, n.exponent, 0});
        break;
    }
  }

  std::vector<StackOp> ops_;
};

}  // namespace calabi::testing

#endif

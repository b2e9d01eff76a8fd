#pragma once

// One-variable arithmetic expressions in u.
//
// Grammar (binary64 throughout):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 'u' | func '(' expr (',' expr)* ')' | '(' expr ')'
//   func    := sqrt | exp | log | abs | sin | cos | pow
//
// There is no implicit multiplication and no named constant other than u.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace singfront {

enum class Op {
  Constant,
  Variable,
  Negate,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Sqrt,
  Exp,
  Log,
  Abs,
  Sin,
  Cos,
};

class Expr {
 public:
  struct Node;

  /// Constant zero.
  Expr();

  static Expr constant(double value);
  static Expr variable();
  static Expr unary(Op op, Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  /// Throws EvalDomainError when any sub-expression is non-finite or a power
  /// has a negative base with a non-integer exponent.
  double operator()(double u) const;

  /// Fully parenthesised rendering; parse(to_string()) evaluates identically.
  std::string to_string() const;

  /// True when the expression tree is a literal constant.
  bool is_constant() const;

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;

  friend class Parser;
};

/// Throws SyntaxError or UnknownIdentifier with the byte offset of the fault.
Expr parse(std::string_view src);

inline double eval(const Expr& e, double u) { return e(u); }

}  // namespace singfront

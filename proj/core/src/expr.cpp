#include "singfront/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "singfront/error.hpp"

namespace singfront {

struct Expr::Node {
  Op op = Op::Constant;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

const char* function_name(Op op) {
  switch (op) {
    case Op::Sqrt: return "sqrt";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Abs: return "abs";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    default: return nullptr;
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::fabs(v));
  std::string s(buf);
  if (std::signbit(v)) return "(-" + s + ")";
  return s;
}

std::string render(const Expr::Node& n) {
  switch (n.op) {
    case Op::Constant: return format_number(n.value);
    case Op::Variable: return "u";
    case Op::Negate: return "(-" + render(*n.lhs) + ")";
    case Op::Add: return "(" + render(*n.lhs) + " + " + render(*n.rhs) + ")";
    case Op::Sub: return "(" + render(*n.lhs) + " - " + render(*n.rhs) + ")";
    case Op::Mul: return "(" + render(*n.lhs) + " * " + render(*n.rhs) + ")";
    case Op::Div: return "(" + render(*n.lhs) + " / " + render(*n.rhs) + ")";
    case Op::Pow: return "(" + render(*n.lhs) + " ^ " + render(*n.rhs) + ")";
    default: return std::string(function_name(n.op)) + "(" + render(*n.lhs) + ")";
  }
}

double real_power(double base, double exponent, const Expr::Node& n, double u) {
  if (base < 0.0 && exponent != std::trunc(exponent)) {
    throw EvalDomainError("negative base with non-integer exponent", render(n), u);
  }
  return std::pow(base, exponent);
}

double evaluate(const Expr::Node& n, double u) {
  double r = 0.0;
  switch (n.op) {
    case Op::Constant: return n.value;
    case Op::Variable: return u;
    case Op::Negate: return -evaluate(*n.lhs, u);
    case Op::Add: r = evaluate(*n.lhs, u) + evaluate(*n.rhs, u); break;
    case Op::Sub: r = evaluate(*n.lhs, u) - evaluate(*n.rhs, u); break;
    case Op::Mul: r = evaluate(*n.lhs, u) * evaluate(*n.rhs, u); break;
    case Op::Div: r = evaluate(*n.lhs, u) / evaluate(*n.rhs, u); break;
    case Op::Pow: r = real_power(evaluate(*n.lhs, u), evaluate(*n.rhs, u), n, u); break;
    case Op::Sqrt: {
      const double a = evaluate(*n.lhs, u);
      if (a < 0.0) throw EvalDomainError("sqrt of negative value", render(n), u);
      r = std::sqrt(a);
      break;
    }
    case Op::Exp: r = std::exp(evaluate(*n.lhs, u)); break;
    case Op::Log: {
      const double a = evaluate(*n.lhs, u);
      if (a <= 0.0) throw EvalDomainError("log of non-positive value", render(n), u);
      r = std::log(a);
      break;
    }
    case Op::Abs: r = std::fabs(evaluate(*n.lhs, u)); break;
    case Op::Sin: r = std::sin(evaluate(*n.lhs, u)); break;
    case Op::Cos: r = std::cos(evaluate(*n.lhs, u)); break;
  }
  if (!std::isfinite(r)) {
    throw EvalDomainError("non-finite result", render(n), u);
  }
  return r;
}

NodePtr make(Op op, double value, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->value = value;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

}  // namespace

// Recursive-descent parser over the grammar documented in expr.hpp.
class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr run() {
    skip_space();
    if (pos_ == src_.size()) throw SyntaxError("empty expression", pos_);
    NodePtr root = expression();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected token");
    return Expr(std::move(root));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::string msg = what + " at position " + std::to_string(pos_);
    if (pos_ < src_.size()) msg += " near '" + std::string(1, src_[pos_]) + "'";
    throw SyntaxError(msg, pos_);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Op::Add, 0.0, lhs, term());
      } else if (accept('-')) {
        lhs = make(Op::Sub, 0.0, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Op::Mul, 0.0, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Op::Div, 0.0, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Negate, 0.0, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::Pow, 0.0, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ == src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      NodePtr inner = expression();
      expect(')');
      return inner;
    }
    fail("unexpected token");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ == start + 1 && src_[start] == '.') {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        fail("malformed exponent");
      }
      while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
      pos_ = p;
    }
    const std::string text(src_.substr(start, pos_ - start));
    const double v = std::strtod(text.c_str(), nullptr);
    if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      fail("implicit multiplication is not supported");
    }
    return make(Op::Constant, v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(src_.substr(start, pos_ - start));
    if (name == "u") return make(Op::Variable, 0.0);

    static constexpr std::pair<const char*, Op> kUnary[] = {
        {"sqrt", Op::Sqrt}, {"exp", Op::Exp}, {"log", Op::Log},
        {"abs", Op::Abs},   {"sin", Op::Sin}, {"cos", Op::Cos},
    };
    for (const auto& [fname, op] : kUnary) {
      if (name == fname) {
        expect('(');
        NodePtr arg = expression();
        expect(')');
        return make(op, 0.0, arg);
      }
    }
    if (name == "pow") {
      expect('(');
      NodePtr base = expression();
      expect(',');
      NodePtr exponent = expression();
      expect(')');
      return make(Op::Pow, 0.0, base, exponent);
    }
    throw UnknownIdentifier("unknown identifier '" + name + "' at position " + std::to_string(start),
                            start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

Expr::Expr() : root_(make(Op::Constant, 0.0)) {}

Expr Expr::constant(double value) { return Expr(make(Op::Constant, value)); }

Expr Expr::variable() { return Expr(make(Op::Variable, 0.0)); }

Expr Expr::unary(Op op, Expr operand) { return Expr(make(op, 0.0, operand.root_)); }

Expr Expr::binary(Op op, Expr lhs, Expr rhs) { return Expr(make(op, 0.0, lhs.root_, rhs.root_)); }

double Expr::operator()(double u) const { return evaluate(*root_, u); }

std::string Expr::to_string() const { return render(*root_); }

bool Expr::is_constant() const { return root_->op == Op::Constant; }

Expr parse(std::string_view src) { return Parser(src).run(); }

}  // namespace singfront

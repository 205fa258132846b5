#include "shapeflow/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "shapeflow/error.hpp"

namespace shapeflow {

struct Expression::Node {
  enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Sqrt } op;
  double value = 0.0;
  std::size_t index = 0;
  std::shared_ptr<const Node> a, b;

  double eval(std::span<const double> v) const {
    switch (op) {
      case Op::Const: return value;
      case Op::Var: return v[index];
      case Op::Neg: return -a->eval(v);
      case Op::Add: return a->eval(v) + b->eval(v);
      case Op::Sub: return a->eval(v) - b->eval(v);
      case Op::Mul: return a->eval(v) * b->eval(v);
      case Op::Div: return a->eval(v) / b->eval(v);
      case Op::Pow: return std::pow(a->eval(v), b->eval(v));
      case Op::Sin: return std::sin(a->eval(v));
      case Op::Cos: return std::cos(a->eval(v));
      case Op::Exp: return std::exp(a->eval(v));
      case Op::Sqrt: return std::sqrt(a->eval(v));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Config, "expression '" + std::string(src_) + "': " + what +
                                       " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) n = make(Op::Add, n, term());
      else if (accept('-')) n = make(Op::Sub, n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = make(Op::Mul, n, unary());
      else if (accept('/')) n = make(Op::Div, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    if (accept('+')) return unary();
    NodePtr base = primary();
    if (accept('^')) return make(Op::Pow, base, unary());
    return base;
  }

  std::string identifier() {
    static constexpr std::string_view kTheta = "\xCE\xB8";
    if (src_.substr(pos_, kTheta.size()) == kTheta) {
      pos_ += kTheta.size();
      return "theta";
    }
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  NodePtr primary() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (accept('(')) {
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(src_.substr(pos_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      auto n = std::make_shared<Expression::Node>();
      n->op = Op::Const;
      n->value = v;
      return n;
    }
    const std::string name = identifier();
    if (name.empty()) fail("unexpected character");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        auto n = std::make_shared<Expression::Node>();
        n->op = Op::Var;
        n->index = i;
        return n;
      }
    }
    if (name == "pi") {
      auto n = std::make_shared<Expression::Node>();
      n->op = Op::Const;
      n->value = std::numbers::pi;
      return n;
    }
    Op fn;
    if (name == "sin") fn = Op::Sin;
    else if (name == "cos") fn = Op::Cos;
    else if (name == "exp") fn = Op::Exp;
    else if (name == "sqrt") fn = Op::Sqrt;
    else fail("unknown identifier '" + name + "'");
    if (!accept('(')) fail("expected '(' after " + name);
    NodePtr arg = expr();
    if (!accept(')')) fail("expected ')'");
    return make(fn, arg);
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view source, std::vector<std::string> variables) {
  Expression e;
  e.source_ = std::string(source);
  e.variables_ = std::move(variables);
  e.root_ = Parser(e.source_, e.variables_).parse();
  return e;
}

double Expression::operator()(std::span<const double> values) const {
  if (values.size() != variables_.size()) {
    throw Error(ErrorKind::Parameter, "wrong number of expression arguments");
  }
  return root_->eval(values);
}

}  // namespace shapeflow

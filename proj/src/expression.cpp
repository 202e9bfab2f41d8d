#include "freeplate/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "freeplate/errors.hpp"

namespace freeplate {

enum class Op {
  kConst, kVar, kNeg, kNot, kAdd, kSub, kMul, kDiv, kPow,
  kLt, kLe, kGt, kGe, kEq, kNe, kAnd, kOr, kCall1, kCall2
};

struct Expression::Node {
  Op op = Op::kConst;
  double value = 0.0;
  int var = 0;
  double (*fn1)(double) = nullptr;
  double (*fn2)(double, double) = nullptr;
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::unique_ptr<Node>;

double eval(const Node& n, std::span<const double> x) {
  switch (n.op) {
    case Op::kConst: return n.value;
    case Op::kVar: return x[static_cast<std::size_t>(n.var)];
    case Op::kNeg: return -eval(*n.lhs, x);
    case Op::kNot: return eval(*n.lhs, x) != 0.0 ? 0.0 : 1.0;
    case Op::kAdd: return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Op::kSub: return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Op::kMul: return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Op::kDiv: return eval(*n.lhs, x) / eval(*n.rhs, x);
    case Op::kPow: return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
    case Op::kLt: return eval(*n.lhs, x) < eval(*n.rhs, x) ? 1.0 : 0.0;
    case Op::kLe: return eval(*n.lhs, x) <= eval(*n.rhs, x) ? 1.0 : 0.0;
    case Op::kGt: return eval(*n.lhs, x) > eval(*n.rhs, x) ? 1.0 : 0.0;
    case Op::kGe: return eval(*n.lhs, x) >= eval(*n.rhs, x) ? 1.0 : 0.0;
    case Op::kEq: return eval(*n.lhs, x) == eval(*n.rhs, x) ? 1.0 : 0.0;
    case Op::kNe: return eval(*n.lhs, x) != eval(*n.rhs, x) ? 1.0 : 0.0;
    case Op::kAnd: return eval(*n.lhs, x) != 0.0 && eval(*n.rhs, x) != 0.0 ? 1.0 : 0.0;
    case Op::kOr: return eval(*n.lhs, x) != 0.0 || eval(*n.rhs, x) != 0.0 ? 1.0 : 0.0;
    case Op::kCall1: return n.fn1(eval(*n.lhs, x));
    case Op::kCall2: return n.fn2(eval(*n.lhs, x), eval(*n.rhs, x));
  }
  return 0.0;
}

double fn_abs(double v) { return std::abs(v); }
double fn_sqrt(double v) { return std::sqrt(v); }
double fn_exp(double v) { return std::exp(v); }
double fn_log(double v) { return std::log(v); }
double fn_sin(double v) { return std::sin(v); }
double fn_cos(double v) { return std::cos(v); }
double fn_tan(double v) { return std::tan(v); }
double fn_min(double a, double b) { return std::min(a, b); }
double fn_max(double a, double b) { return std::max(a, b); }
double fn_pow(double a, double b) { return std::pow(a, b); }

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_unique<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, int dim) : text_(text), dim_(dim) {}

  NodePtr parse() {
    NodePtr n = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(const std::string& token) {
    skip_space();
    if (text_.compare(pos_, token.size(), token) != 0) return false;
    // Word operators must not swallow the prefix of an identifier.
    if (std::isalpha(static_cast<unsigned char>(token[0]))) {
      const std::size_t end = pos_ + token.size();
      if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        return false;
    }
    pos_ += token.size();
    return true;
  }

  void expect(const std::string& token) {
    if (!accept(token)) fail("expected '" + token + "'");
  }

  NodePtr parse_or() {
    NodePtr lhs = parse_and();
    while (accept("||") || accept("or")) lhs = make(Op::kOr, std::move(lhs), parse_and());
    return lhs;
  }

  NodePtr parse_and() {
    NodePtr lhs = parse_not();
    while (accept("&&") || accept("and")) lhs = make(Op::kAnd, std::move(lhs), parse_not());
    return lhs;
  }

  NodePtr parse_not() {
    skip_space();
    if (text_.compare(pos_, 2, "!=") != 0 && (accept("!") || accept("not"))) {
      return make(Op::kNot, parse_not());
    }
    return parse_compare();
  }

  NodePtr parse_compare() {
    NodePtr lhs = parse_sum();
    static const std::pair<const char*, Op> ops[] = {{"<=", Op::kLe}, {">=", Op::kGe},
                                                     {"==", Op::kEq}, {"!=", Op::kNe},
                                                     {"<", Op::kLt},  {">", Op::kGt}};
    for (const auto& [token, op] : ops) {
      if (accept(token)) return make(op, std::move(lhs), parse_sum());
    }
    return lhs;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept("+")) lhs = make(Op::kAdd, std::move(lhs), parse_term());
      else if (accept("-")) lhs = make(Op::kSub, std::move(lhs), parse_term());
      else return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept("*")) lhs = make(Op::kMul, std::move(lhs), parse_unary());
      else if (accept("/")) lhs = make(Op::kDiv, std::move(lhs), parse_unary());
      else return lhs;
    }
  }

  NodePtr parse_unary() {
    if (accept("-")) return make(Op::kNeg, parse_unary());
    if (accept("+")) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept("^")) return make(Op::kPow, std::move(base), parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = make(Op::kConst);
      n->value = v;
      return n;
    }
    if (accept("(")) {
      NodePtr inner = parse_or();
      expect(")");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);

    if (name == "pi") {
      auto n = make(Op::kConst);
      n->value = std::numbers::pi;
      return n;
    }
    int var = -1;
    if (name == "x") var = 0;
    else if (name == "y") var = 1;
    else if (name == "z") var = 2;
    else if (name.size() > 1 && name[0] == 'x' &&
             name.find_first_not_of("0123456789", 1) == std::string::npos) {
      var = std::atoi(name.c_str() + 1) - 1;
      if (var < 0) { pos_ = start; fail("coordinates are numbered from x1"); }
    }
    if (var >= 0) {
      if (var >= dim_) {
        pos_ = start;
        fail("'" + name + "' exceeds dimension " + std::to_string(dim_));
      }
      auto n = make(Op::kVar);
      n->var = var;
      return n;
    }

    static const std::pair<const char*, double (*)(double)> unary[] = {
        {"abs", fn_abs}, {"sqrt", fn_sqrt}, {"exp", fn_exp}, {"log", fn_log},
        {"sin", fn_sin}, {"cos", fn_cos},   {"tan", fn_tan}};
    static const std::pair<const char*, double (*)(double, double)> binary[] = {
        {"min", fn_min}, {"max", fn_max}, {"pow", fn_pow}};
    for (const auto& [fname, fn] : unary) {
      if (name == fname) {
        expect("(");
        auto n = make(Op::kCall1, parse_or());
        n->fn1 = fn;
        expect(")");
        return n;
      }
    }
    for (const auto& [fname, fn] : binary) {
      if (name == fname) {
        expect("(");
        NodePtr a = parse_or();
        expect(",");
        NodePtr b = parse_or();
        expect(")");
        auto n = make(Op::kCall2, std::move(a), std::move(b));
        n->fn2 = fn;
        return n;
      }
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  const std::string& text_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text, int dim) {
  if (dim < 1) throw DomainError("expression dimension must be >= 1");
  Expression e;
  e.root_ = Parser(text, dim).parse();
  e.dim_ = dim;
  e.text_ = text;
  return e;
}

double Expression::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) < dim_) throw DomainError("point has too few coordinates");
  return eval(*root_, x);
}

bool Expression::holds(std::span<const double> x) const {
  const double v = (*this)(x);
  return v != 0.0 && !std::isnan(v);
}

}  // namespace freeplate

#include "fracjensen/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fracjensen/errors.hpp"

namespace fracjensen::expr {
namespace {

using NodePtr = std::unique_ptr<const Node>;

struct CatalogEntry {
  std::string_view name;
  std::string_view text;
};

constexpr std::array<CatalogEntry, 5> kCatalog{{
    {"square", "x^2"},
    {"abs", "abs(x)"},
    {"exp", "exp(x)"},
    {"neg_square", "-x^2"},
    {"cube", "x^3"},
}};

constexpr std::array<std::string_view, 5> kCatalogNames{"square", "abs", "exp", "neg_square",
                                                        "cube"};

struct BuiltinInfo {
  std::string_view name;
  Builtin fn;
  int arity;
};

constexpr std::array<BuiltinInfo, 7> kBuiltins{{
    {"exp", Builtin::Exp, 1},
    {"log", Builtin::Log, 1},
    {"sin", Builtin::Sin, 1},
    {"cos", Builtin::Cos, 1},
    {"sqrt", Builtin::Sqrt, 1},
    {"abs", Builtin::Abs, 1},
    {"pow", Builtin::Pow, 2},
}};

const BuiltinInfo* find_builtin(std::string_view name) {
  for (const auto& b : kBuiltins)
    if (b.name == name) return &b;
  return nullptr;
}

const BuiltinInfo& builtin_info(Builtin fn) {
  for (const auto& b : kBuiltins)
    if (b.fn == fn) return b;
  return kBuiltins[0];
}

NodePtr make_leaf(NodeKind kind, double value = 0.0, std::size_t param = 0) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->value = value;
  n->param = param;
  return n;
}

NodePtr make_op(NodeKind kind, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->args.push_back(std::move(lhs));
  if (rhs) n->args.push_back(std::move(rhs));
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& params)
      : text_(text), params_(params) {}

  NodePtr parse() {
    skip_ws();
    if (eof()) throw SyntaxError(pos_, "empty expression");
    auto node = expression();
    skip_ws();
    if (!eof()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return node;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("expected '") + c + "'");
  }

  // expression := term (('+' | '-') term)*
  NodePtr expression() {
    auto lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make_op(NodeKind::Add, std::move(lhs), term());
      else if (accept('-'))
        lhs = make_op(NodeKind::Sub, std::move(lhs), term());
      else
        return lhs;
    }
  }

  // term := unary (('*' | '/') unary)*
  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make_op(NodeKind::Mul, std::move(lhs), unary());
      else if (accept('/'))
        lhs = make_op(NodeKind::Div, std::move(lhs), unary());
      else
        return lhs;
    }
  }

  // unary := '-' unary | power
  NodePtr unary() {
    if (accept('-')) return make_op(NodeKind::Neg, unary());
    return power();
  }

  // power := primary ('^' unary)?   (right-associative through unary)
  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make_op(NodeKind::Pow, std::move(base), unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    const std::size_t start = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      auto inner = expression();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      return identifier(name, start);
    }
    if (eof()) throw SyntaxError(pos_, "unexpected end of input");
    throw SyntaxError(pos_, std::string("expected operand, found '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
    if (!eof() && (peek() == 'e' || peek() == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
      throw SyntaxError(start, "malformed number");
    return make_leaf(NodeKind::Const, value);
  }

  NodePtr identifier(std::string_view name, std::size_t start) {
    if (const auto* b = find_builtin(name)) {
      skip_ws();
      if (peek() != '(') throw SyntaxError(pos_, "expected '(' after " + std::string(name));
      ++pos_;
      auto call = std::make_unique<Node>();
      call->kind = NodeKind::Call;
      call->fn = b->fn;
      call->args.push_back(expression());
      for (int i = 1; i < b->arity; ++i) {
        expect(',');
        call->args.push_back(expression());
      }
      expect(')');
      return call;
    }
    if (name == "x") return make_leaf(NodeKind::Var);
    for (std::size_t i = 0; i < params_.size(); ++i)
      if (params_[i] == name) return make_leaf(NodeKind::Param, 0.0, i);
    if (name == "pi") return make_leaf(NodeKind::Const, std::numbers::pi);
    if (name == "e") return make_leaf(NodeKind::Const, std::numbers::e);
    (void)start;
    throw UnknownIdentifier(std::string(name));
  }

  std::string_view text_;
  const std::vector<std::string>& params_;
  std::size_t pos_ = 0;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

double power(double base, double exponent) {
  if (base < 0.0 && exponent != std::nearbyint(exponent))
    throw DomainError("negative base with non-integer exponent");
  if (base == 0.0 && exponent < 0.0) throw DomainError("division by zero in power");
  return checked(std::pow(base, exponent), "power");
}

double evaluate(const Node& n, double x, std::span<const double> params) {
  switch (n.kind) {
    case NodeKind::Const:
      return n.value;
    case NodeKind::Var:
      return x;
    case NodeKind::Param:
      if (n.param >= params.size()) throw DomainError("unbound expression parameter");
      return params[n.param];
    case NodeKind::Neg:
      return -evaluate(*n.args[0], x, params);
    case NodeKind::Add:
      return checked(evaluate(*n.args[0], x, params) + evaluate(*n.args[1], x, params), "+");
    case NodeKind::Sub:
      return checked(evaluate(*n.args[0], x, params) - evaluate(*n.args[1], x, params), "-");
    case NodeKind::Mul:
      return checked(evaluate(*n.args[0], x, params) * evaluate(*n.args[1], x, params), "*");
    case NodeKind::Div: {
      const double num = evaluate(*n.args[0], x, params);
      const double den = evaluate(*n.args[1], x, params);
      if (den == 0.0) throw DomainError("division by zero");
      return checked(num / den, "/");
    }
    case NodeKind::Pow:
      return power(evaluate(*n.args[0], x, params), evaluate(*n.args[1], x, params));
    case NodeKind::Call: {
      const double a = evaluate(*n.args[0], x, params);
      switch (n.fn) {
        case Builtin::Exp:
          return checked(std::exp(a), "exp");
        case Builtin::Log:
          if (a <= 0.0) throw DomainError("log of non-positive value");
          return std::log(a);
        case Builtin::Sin:
          return std::sin(a);
        case Builtin::Cos:
          return std::cos(a);
        case Builtin::Sqrt:
          if (a < 0.0) throw DomainError("sqrt of negative value");
          return std::sqrt(a);
        case Builtin::Abs:
          return std::abs(a);
        case Builtin::Pow:
          return power(a, evaluate(*n.args[1], x, params));
      }
    }
  }
  throw DomainError("corrupt expression node");
}

const char* op_symbol(NodeKind k) {
  switch (k) {
    case NodeKind::Add: return " + ";
    case NodeKind::Sub: return " - ";
    case NodeKind::Mul: return " * ";
    case NodeKind::Div: return " / ";
    case NodeKind::Pow: return " ^ ";
    default: return " ? ";
  }
}

void write(const Node& n, std::span<const std::string> names, std::string& out) {
  switch (n.kind) {
    case NodeKind::Const: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case NodeKind::Var:
      out += 'x';
      return;
    case NodeKind::Param:
      out += n.param < names.size() ? names[n.param] : "p" + std::to_string(n.param);
      return;
    case NodeKind::Neg:
      out += "(-";
      write(*n.args[0], names, out);
      out += ')';
      return;
    case NodeKind::Call:
      out += builtin_info(n.fn).name;
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        write(*n.args[i], names, out);
      }
      out += ')';
      return;
    default:
      out += '(';
      write(*n.args[0], names, out);
      out += op_symbol(n.kind);
      write(*n.args[1], names, out);
      out += ')';
  }
}

}  // namespace

bool same_tree(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case NodeKind::Const:
      if (a.value != b.value) return false;
      break;
    case NodeKind::Param:
      if (a.param != b.param) return false;
      break;
    case NodeKind::Call:
      if (a.fn != b.fn) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  return true;
}

std::string to_string(const Node& node, std::span<const std::string> param_names) {
  std::string out;
  write(node, param_names, out);
  return out;
}

ScalarFunction parse(std::string_view text, std::vector<std::string> param_names) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
    trimmed.remove_suffix(1);

  std::string_view body = text;
  for (const auto& entry : kCatalog)
    if (entry.name == trimmed) body = entry.text;

  ScalarFunction f;
  f.source_ = std::string(text);
  f.params_ = std::move(param_names);
  f.tree_ = Parser(body, f.params_).parse();
  return f;
}

std::span<const std::string_view> catalog_names() { return kCatalogNames; }

ScalarFunction ScalarFunction::with_domain_hint(Interval hint) const {
  ScalarFunction copy = *this;
  copy.domain_hint_ = hint;
  return copy;
}

double ScalarFunction::eval(double x) const { return evaluate(*tree_, x, {}); }

double ScalarFunction::eval(double x, std::span<const double> params) const {
  return evaluate(*tree_, x, params);
}

std::string ScalarFunction::serialize() const { return to_string(*tree_, params_); }

double eval(const ScalarFunction& f, double x) { return f.eval(x); }

double numeric_derivative(const RealFunction& f, double x, double h) {
  if (!(h > 0.0)) throw DomainError("derivative step must be positive");
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double numeric_derivative(const ScalarFunction& f, double x, double h) {
  return numeric_derivative(RealFunction([&f](double v) { return f.eval(v); }), x, h);
}

}  // namespace fracjensen::expr

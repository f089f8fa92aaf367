#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracjensen/common.hpp"

namespace fracjensen::expr {

enum class NodeKind { Const, Var, Param, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Builtin { Exp, Log, Sin, Cos, Sqrt, Abs, Pow };

/// Expression tree node. Trees are immutable once built and shared between
/// ScalarFunction copies.
struct Node {
  NodeKind kind = NodeKind::Const;
  double value = 0.0;       // Const
  std::size_t param = 0;    // Param
  Builtin fn = Builtin::Exp;  // Call
  std::vector<std::unique_ptr<const Node>> args;  // operands, left to right
};

bool same_tree(const Node& a, const Node& b);

/// Canonical text form; parsing it yields a tree equal to the original.
std::string to_string(const Node& node, std::span<const std::string> param_names = {});

/// A parsed, evaluable function of `x`.
///
/// Optional named parameters (for instance `alpha` in a custom kernel G) are
/// bound per call through eval(x, params); eval(x) requires none.
class ScalarFunction {
 public:
  ScalarFunction() = default;

  const std::string& source() const { return source_; }
  const Node& tree() const { return *tree_; }
  const std::vector<std::string>& param_names() const { return params_; }
  const std::optional<Interval>& domain_hint() const { return domain_hint_; }
  ScalarFunction with_domain_hint(Interval hint) const;

  double eval(double x) const;
  double eval(double x, std::span<const double> params) const;
  double operator()(double x) const { return eval(x); }

  /// Canonical serialization of the tree.
  std::string serialize() const;

 private:
  friend ScalarFunction parse(std::string_view, std::vector<std::string>);
  std::string source_;
  std::shared_ptr<const Node> tree_;
  std::vector<std::string> params_;
  std::optional<Interval> domain_hint_;
};

/// Parses `text`. A text that is exactly a catalog name (square, abs, exp,
/// neg_square, cube) yields the catalog entry.
///
/// Throws SyntaxError (with byte offset) or UnknownIdentifier.
ScalarFunction parse(std::string_view text, std::vector<std::string> param_names = {});

/// Names accepted as whole-text catalog entries.
std::span<const std::string_view> catalog_names();

double eval(const ScalarFunction& f, double x);

/// Central difference (f(x+h) - f(x-h)) / (2h).
double numeric_derivative(const RealFunction& f, double x, double h);
double numeric_derivative(const ScalarFunction& f, double x, double h);

}  // namespace fracjensen::expr

#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "fracjensen/errors.hpp"
#include "fracjensen/expr.hpp"

using namespace fracjensen;
using expr::NodeKind;

TEST_CASE("power binds to its operands") {
  const auto f = expr::parse("x^2");
  const auto& root = f.tree();
  CHECK(root.kind == NodeKind::Pow);
  REQUIRE(root.args.size() == 2);
  CHECK(root.args[0]->kind == NodeKind::Var);
  CHECK(root.args[1]->kind == NodeKind::Const);
  CHECK(root.args[1]->value == 2.0);
}

TEST_CASE("call then divide") {
  const auto f = expr::parse("log(x)/x");
  const auto& root = f.tree();
  CHECK(root.kind == NodeKind::Div);
  CHECK(root.args[0]->kind == NodeKind::Call);
  CHECK(root.args[0]->fn == expr::Builtin::Log);
  CHECK(root.args[1]->kind == NodeKind::Var);
}

TEST_CASE("unary plus is rejected with the byte offset") {
  try {
    expr::parse("2*+x");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 2);
  }
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(expr::parse(""), SyntaxError);
  CHECK_THROWS_AS(expr::parse("(x"), SyntaxError);
  CHECK_THROWS_AS(expr::parse("x +"), SyntaxError);
  CHECK_THROWS_AS(expr::parse("x y"), SyntaxError);
  CHECK_THROWS_AS(expr::parse("foo(x)"), UnknownIdentifier);
  CHECK_THROWS_AS(expr::parse("y + 1"), UnknownIdentifier);
}

TEST_CASE("precedence and associativity") {
  CHECK(expr::parse("-x^2")(3.0) == -9.0);
  CHECK(expr::parse("2^3^2")(0.0) == 512.0);
  CHECK(expr::parse("8/4/2")(0.0) == 1.0);
  CHECK(expr::parse("8-4-2")(0.0) == 2.0);
  CHECK(expr::parse("1 + 2*3")(0.0) == 7.0);
  CHECK(expr::parse("2^-1")(0.0) == 0.5);
  CHECK(expr::parse("pow(x, 3)")(2.0) == 8.0);
}

TEST_CASE("evaluation examples") {
  CHECK(expr::eval(expr::parse("x^2"), 3.0) == 9.0);
  CHECK(expr::eval(expr::parse("log(x)"), 1.0) == 0.0);
  CHECK_THROWS_AS(expr::eval(expr::parse("log(x)"), -1.0), DomainError);
  CHECK_THROWS_AS(expr::parse("sqrt(x)")(-1.0), DomainError);
  CHECK_THROWS_AS(expr::parse("1/x")(0.0), DomainError);
  CHECK_THROWS_AS(expr::parse("x^0.5")(-4.0), DomainError);
  CHECK_THROWS_AS(expr::parse("x^-1")(0.0), DomainError);
  CHECK(expr::parse("x^3")(-2.0) == -8.0);
  CHECK_THROWS_AS(expr::parse("exp(x)")(1000.0), DomainError);
}

TEST_CASE("catalog entries") {
  CHECK(expr::parse("square")(3.0) == 9.0);
  CHECK(expr::parse("abs")(-2.0) == 2.0);
  CHECK(expr::parse("exp")(0.0) == 1.0);
  CHECK(expr::parse("neg_square")(3.0) == -9.0);
  CHECK(expr::parse("cube")(-2.0) == -8.0);
  CHECK(expr::catalog_names().size() == 5);
}

TEST_CASE("numeric derivative") {
  CHECK(std::abs(expr::numeric_derivative(expr::parse("x^2"), 1.0, 1e-5) - 2.0) <= 1e-9);
  CHECK(std::abs(expr::numeric_derivative(expr::parse("5"), 0.3, 1e-5)) <= 1e-12);
  CHECK(std::abs(expr::numeric_derivative(expr::parse("exp(x)"), 0.0, 1e-5) - 1.0) <= 1e-9);
  CHECK_THROWS_AS(expr::numeric_derivative(expr::parse("x"), 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(expr::numeric_derivative(expr::parse("log(x)"), 0.0, 1e-5), DomainError);
}

TEST_CASE("numeric derivative of catalog functions on [-2, 2]") {
  struct Case {
    const char* name;
    double (*df)(double);
  };
  const Case cases[] = {
      {"square", [](double x) { return 2 * x; }},
      {"neg_square", [](double x) { return -2 * x; }},
      {"cube", [](double x) { return 3 * x * x; }},
      {"exp", [](double x) { return std::exp(x); }},
      {"abs", [](double x) { return x > 0 ? 1.0 : -1.0; }},
  };
  for (const auto& c : cases) {
    const auto f = expr::parse(c.name);
    for (int i = 0; i <= 80; ++i) {
      const double x = -2.0 + 0.05 * i;
      if (std::string(c.name) == "abs" && std::abs(x) < 1e-3) continue;
      CHECK(std::abs(expr::numeric_derivative(f, x, 1e-5) - c.df(x)) <= 1e-8);
    }
  }
}

TEST_CASE("serialize round trip") {
  const char* sources[] = {"x^2",         "log(x)/x",    "-x^2 + 3*x - 1", "2^3^2",
                           "exp(-x)*sin(x)", "abs(x - 0.1)", "pow(x, 2.5)/(1 + x)", "-(-x)",
                           "1e-3*x", "pi*e"};
  for (const char* s : sources) {
    const auto once = expr::parse(s);
    const auto twice = expr::parse(once.serialize());
    CHECK(expr::same_tree(once.tree(), twice.tree()));
    CHECK(twice.serialize() == once.serialize());
  }
}

TEST_CASE("random polynomials agree with Horner") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  std::uniform_real_distribution<double> point(-3.0, 3.0);
  std::uniform_int_distribution<int> degree(0, 6);
  char buf[64];
  for (int trial = 0; trial < 300; ++trial) {
    const int n = degree(rng);
    std::vector<double> c(n + 1);
    for (auto& v : c) v = coef(rng);

    // Same coefficients written in Horner form must evaluate bit-identically.
    std::string horner;
    std::string monomial;
    for (int k = n; k >= 0; --k) {
      std::snprintf(buf, sizeof buf, "%.17g", c[k]);
      horner = k == n ? "(" + std::string(buf) + ")" : "(" + horner + ")*x + (" + buf + ")";
      monomial += (k == n ? "" : " + ") + std::string("(") + buf + ")*x^" + std::to_string(k);
    }
    const auto fh = expr::parse(horner);
    const auto fm = expr::parse(monomial);
    for (int j = 0; j < 10; ++j) {
      const double x = point(rng);
      double ref = 0.0;
      double scale = 0.0;
      for (int k = n; k >= 0; --k) ref = ref * x + c[k];
      for (int k = 0; k <= n; ++k) scale += std::abs(c[k] * std::pow(x, k));
      CHECK(fh(x) == ref);
      CHECK(std::abs(fm(x) - ref) <= 1e-14 * std::max(scale, 1e-300) * (n + 1));
    }
  }
}

TEST_CASE("parameters bind per call") {
  const auto g = expr::parse("x^(1 - alpha)", {"alpha"});
  const double half[1] = {0.5};
  CHECK(g.eval(4.0, half) == doctest::Approx(2.0));
  CHECK_THROWS(g.eval(4.0));
}

TEST_CASE("concurrent evaluation is safe") {
  const auto f = expr::parse("exp(-x^2)*cos(3*x) + sqrt(abs(x))");
  std::vector<double> results(4, 0.0);
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w)
    pool.emplace_back([&, w] {
      double sum = 0.0;
      for (int i = 0; i < 20000; ++i) sum += f(-2.0 + 4.0 * i / 20000.0);
      results[w] = sum;
    });
  for (auto& t : pool) t.join();
  for (double r : results) CHECK(r == results[0]);
}

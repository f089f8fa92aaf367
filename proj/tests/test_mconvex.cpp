#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fracjensen/errors.hpp"
#include "fracjensen/expr.hpp"
#include "fracjensen/mconvex.hpp"

using namespace fracjensen;

namespace {
const RealFunction square = [](double x) { return x * x; };
const RealFunction cube = [](double x) { return x * x * x; };
}  // namespace

TEST_CASE("pointwise defects") {
  CHECK(mconvex::check_point(square, {-3, 3}, 1, 2, 0.5, 0.5) == doctest::Approx(-0.5));
  CHECK(mconvex::check_point(cube, {-1, 1}, -1, 0, 0.5, 1.0) == doctest::Approx(0.375));
  CHECK(mconvex::check_point(square, {-3, 3}, 1.3, -2.2, 1.0, 0.4) == 0.0);
  CHECK(mconvex::check_equivalent_form(square, {-3, 3}, 1, 2, 0.5, 0.5) ==
        doctest::Approx(-0.6875));
  CHECK(mconvex::check_equivalent_form(square, {-3, 3}, 1.3, -2.2, 0.0, 0.4) == 0.0);

  CHECK_THROWS_AS(mconvex::check_point(square, {1, 2}, 1, 1, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(mconvex::check_point(square, {-3, 3}, 1, 2, 1.5, 0.5), DomainError);
  CHECK_THROWS_AS(mconvex::check_point(square, {-3, 3}, 1, 2, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(mconvex::check_point(square, {-3, 3}, 4, 2, 0.5, 0.5), DomainError);
}

TEST_CASE("equivalent form is the t -> 1 - t swap") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0), unit(0.0, 1.0);
  const auto phi = expr::parse("exp(x) + x^4 - 3*x");
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng), y = u(rng), t = unit(rng), m = 0.01 + 0.99 * unit(rng);
    const double a = mconvex::check_equivalent_form(phi, {-2, 2}, x, y, t, m);
    const double b = mconvex::check_point(phi, {-2, 2}, y, x, 1.0 - t, m);
    CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("certify_grid examples") {
  mconvex::GridOptions opts{20, 1000, 42, mconvex::kViolationTolerance};
  const auto sq = mconvex::certify_grid(square, {0, 2}, 0.7, opts);
  CHECK(sq.worst_violation == 0.0);
  CHECK(sq.passed());
  CHECK_FALSE(sq.is_proof);
  CHECK(sq.summary().find("not a proof") != std::string::npos);

  const auto cu = mconvex::certify_grid(cube, {-1, 1}, 1.0, opts);
  CHECK(cu.worst_violation >= 0.375);
  REQUIRE(cu.witness);
  CHECK(std::min(cu.witness->x, cu.witness->y) < -0.5);
  CHECK(cu.witness->t > 0.0);
  CHECK(cu.witness->t < 1.0);

  CHECK_THROWS_AS(mconvex::certify_grid(square, {1, 2}, 0.5, opts), HypothesisError);
  CHECK_NOTHROW(mconvex::certify_grid(square, {1, 2}, 1.0, opts));
}

TEST_CASE("certify_grid is deterministic in the seed") {
  const auto phi = expr::parse("sin(3*x)");
  mconvex::GridOptions opts{8, 500, 99, mconvex::kViolationTolerance};
  const auto a = mconvex::certify_grid(phi, {-1, 1}, 0.6, opts);
  const auto b = mconvex::certify_grid(phi, {-1, 1}, 0.6, opts);
  CHECK(a.worst_violation == b.worst_violation);
  REQUIRE(a.witness);
  CHECK(a.witness->x == b.witness->x);
  CHECK(a.witness->t == b.witness->t);
}

TEST_CASE("m = 1 agrees with a plain convexity lattice") {
  const char* functions[] = {"x^2", "abs(x)", "exp(x)", "x^3", "sin(x)", "-x^2", "x^4 - x^2"};
  const int n = 12;
  for (const char* text : functions) {
    const auto phi = expr::parse(text);
    const Interval I{-1.5, 1.5};
    bool lattice_violation = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double x = I.lo + I.width() * i / (n - 1), y = I.lo + I.width() * j / (n - 1);
          const double t = static_cast<double>(k) / (n - 1);
          if (phi(t * x + (1 - t) * y) - t * phi(x) - (1 - t) * phi(y) > 1e-9)
            lattice_violation = true;
        }
    const auto report = mconvex::certify_grid(phi, I, 1.0, {n, 0, 1, 1e-9});
    CHECK(report.passed() == !lattice_violation);
  }
}

TEST_CASE("the t = 0 consequence") {
  const char* functions[] = {"x^2", "x^2 + abs(x)", "exp(x) - 1", "x^4 + 2*x"};
  for (const char* text : functions) {
    const auto phi = expr::parse(text);
    for (double m : {0.2, 0.5, 0.9}) {
      const auto r = mconvex::certify_grid(phi, {-1, 2}, m, {15, 0, 1, 1e-9});
      if (r.worst_violation > 1e-12) continue;
      for (int i = 0; i < 15; ++i) {
        const double y = -1.0 + 3.0 * i / 14;
        CHECK(phi(m * y) - m * phi(y) <= 1e-10);
      }
      CHECK(r.worst_scaling_defect <= 1e-10);
    }
  }
}

TEST_CASE("max_m") {
  const auto sq = mconvex::max_m(square, {0, 2}, 20, 1e-3);
  CHECK(sq.m == 1.0);
  CHECK_FALSE(sq.returns_zero);
  const auto neg = mconvex::max_m([](double x) { return -x * x; }, {0, 1}, 20, 1e-3);
  CHECK(neg.returns_zero);
  CHECK_THROWS_AS(mconvex::max_m(square, {1, 2}), HypothesisError);

  // Bisection contract on a function that is not convex on all of [0, 1].
  const auto phi = expr::parse("x^2 - 0.8*x^3");
  const auto found = mconvex::max_m(phi, {0, 1}, 20, 1e-3);
  mconvex::GridOptions grid{20, 0, 42, mconvex::kViolationTolerance};
  for (double m0 : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0})
    if (mconvex::certify_grid(phi, {0, 1}, m0, grid).passed()) CHECK(found.m >= m0 - 1e-3);
}

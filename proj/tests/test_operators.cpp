#include <cmath>
#include <random>

#include "doctest.h"
#include "fracjensen/errors.hpp"
#include "fracjensen/operators.hpp"

using namespace fracjensen;
using kernels::Alpha;
using ops::Side;

namespace {

const kernels::KernelSpec& rl() {
  static const auto k = kernels::make_riemann_liouville();
  return k;
}

ops::OperatorRequest request(RealFunction f, double a, double b, Side side, double alpha, double t,
                             double tol = 1e-10) {
  return {&rl(), std::move(f), {a, b}, side, Alpha(alpha), t, tol};
}

double rl_power(double alpha, double beta, double a, double t) {
  return std::pow(t - a, alpha + beta) * std::tgamma(beta + 1) / std::tgamma(alpha + beta + 1);
}

}  // namespace

TEST_CASE("Riemann-Liouville integral examples") {
  auto one = ops::frac_integral(request([](double) { return 1.0; }, 0, 2, Side::Right, 0.5, 1.0));
  CHECK(std::abs(one.value - 1.1283791670955126) <= 1e-7);
  auto lin = ops::frac_integral(request([](double s) { return s; }, 0, 2, Side::Right, 0.5, 1.0));
  CHECK(std::abs(lin.value - 0.75225277806367505) <= 1e-7);
  CHECK(ops::frac_integral(request([](double) { return 1.0; }, 0, 2, Side::Right, 0.5, 0.0)).value ==
        0.0);
  CHECK(ops::frac_integral(request([](double) { return 1.0; }, 0, 2, Side::Left, 0.5, 2.0)).value ==
        0.0);
}

TEST_CASE("power functions in closed form") {
  for (double beta : {0.0, 1.0, 2.0})
    for (double alpha : {0.25, 0.5, 0.75})
      for (double t : {0.3, 1.0, 1.7}) {
        auto r = ops::frac_integral(request([&](double s) { return std::pow(s, beta); }, 0, 2,
                                            Side::Right, alpha, t));
        const double oracle = rl_power(alpha, beta, 0.0, t);
        CHECK(std::abs(r.value - oracle) <= 1e-6 * oracle);
      }
}

TEST_CASE("request validation") {
  CHECK_THROWS_AS(ops::frac_integral(request([](double) { return 1.0; }, 0, 2, Side::Right, 0.5, 3)),
                  ValidationError);
  CHECK_THROWS_AS(ops::frac_integral(request([](double) { return 1.0; }, 2, 0, Side::Right, 0.5, 1)),
                  ValidationError);
  auto bad_tol = request([](double) { return 1.0; }, 0, 2, Side::Right, 0.5, 1);
  bad_tol.tol = 0.0;
  CHECK_THROWS_AS(ops::frac_integral(bad_tol), ValidationError);
}

TEST_CASE("L1 violation") {
  // f(s) = 1/s^1.2 near a = 0 is not integrable against the RL weight at t.
  auto r = request([](double s) { return std::pow(s, -1.2); }, 0, 2, Side::Left, 0.5, 0.0);
  r.interval = {0.0, 2.0};
  r.t = 1.0;
  r.side = Side::Right;
  CHECK_THROWS_AS(ops::frac_integral(r), NumericalError);
}

TEST_CASE("Hadamard integrals") {
  const double e = std::exp(1.0);
  auto r = ops::hadamard_integral([](double) { return 1.0; }, 1.0, e * e, Side::Right, Alpha(0.5),
                                  e * e, 1e-10);
  CHECK(std::abs(r.value - 1.5957691216057307) <= 1e-6);
  auto one = ops::hadamard_integral([](double) { return 1.0; }, 1.0, e, Side::Right, Alpha(1.0), e,
                                    1e-10);
  CHECK(std::abs(one.value - 1.0) <= 1e-9);
  CHECK(ops::hadamard_integral([](double) { return 1.0; }, 1.0, e, Side::Right, Alpha(0.5), 1.0)
            .value == 0.0);
  CHECK_THROWS_AS(ops::hadamard_integral([](double) { return 1.0; }, 0.0, e, Side::Right,
                                         Alpha(0.5), 1.0),
                  ValidationError);

  const auto had = kernels::make_hadamard();
  for (double alpha : {0.3, 0.7, 1.0}) {
    auto f = [](double s) { return std::sin(s) + 2.0; };
    const auto named = ops::hadamard_integral(f, 1.0, 4.0, Side::Left, Alpha(alpha), 2.0);
    const auto generic =
        ops::frac_integral({&had, f, {1.0, 4.0}, Side::Left, Alpha(alpha), 2.0, 1e-9});
    CHECK(std::abs(named.value - generic.value) <= 1e-10);
  }
}

TEST_CASE("additivity in the domain") {
  // Split ∫_a^t at c; the second piece has the singularity, the first is regular.
  auto f = [](double s) { return std::cos(s) + s * s; };
  const double alpha = 0.6, t = 1.8, c = 0.7;
  auto whole = ops::frac_integral(request(f, 0, 2, Side::Right, alpha, t));
  const kernels::BoundKernel k(rl(), Alpha(alpha));
  auto first = quad::integrate([&](double s) { return f(s) * k.weight(t, s); }, 0.0, c, 1e-11);
  auto second = quad::integrate_endpoint_singular([&](double s) { return f(s) * k.weight(t, s); },
                                                  c, t, quad::Endpoint::Right, alpha, 1e-11);
  CHECK(std::abs(whole.value - (first.value + second.value)) <=
        whole.error_estimate + first.error_estimate + second.error_estimate);
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double p = u(rng), q = u(rng), alpha = 0.2 + 0.1 * (i % 8), t = 1.0 + 0.04 * i;
    auto f = [](double s) { return std::exp(-s); };
    auto g = [](double s) { return std::sin(3 * s); };
    auto jf = ops::frac_integral(request(f, 0, 2, Side::Right, alpha, t));
    auto jg = ops::frac_integral(request(g, 0, 2, Side::Right, alpha, t));
    auto jsum = ops::frac_integral(
        request([&](double s) { return p * f(s) + q * g(s); }, 0, 2, Side::Right, alpha, t));
    CHECK(std::abs(jsum.value - (p * jf.value + q * jg.value)) <= 1e-8);
  }
}

TEST_CASE("right and left mirror for symmetric f") {
  auto f = [](double s) { return (s - 1.0) * (s - 1.0) + std::cos(s - 1.0); };
  for (double alpha : {0.3, 0.5, 0.8})
    for (double delta : {0.1, 0.6, 1.5}) {
      auto right = ops::frac_integral(request(f, 0, 2, Side::Right, alpha, delta));
      auto left = ops::frac_integral(request(f, 0, 2, Side::Left, alpha, 2.0 - delta));
      CHECK(std::abs(right.value - left.value) <= 1e-8);
    }
}

TEST_CASE("derivative examples") {
  CHECK(ops::default_derivative_step(1e-9) == doctest::Approx(1e-3));
  CHECK(ops::default_derivative_step(1e-18) == 1e-5);

  auto lin = request([](double s) { return s; }, 0, 2, Side::Right, 0.5, 1.0);
  CHECK(std::abs(ops::frac_derivative(lin, 1e-4) - 1.1283791670955126) <= 1e-4);
  auto zero = request([](double) { return 0.0; }, 0, 2, Side::Right, 0.5, 1.0);
  CHECK(std::abs(ops::frac_derivative(zero, 1e-4)) <= 1e-8);

  // D^a of the order-a integral of s^2 at t = 0.7; the integral is in closed form.
  const double alpha = 0.5;
  auto composed = request([&](double s) { return rl_power(alpha, 2.0, 0.0, s) * 1.0; }, 0, 2,
                          Side::Right, alpha, 0.7);
  CHECK(std::abs(ops::frac_derivative(composed) - 0.49) <= 1e-3);

  CHECK_THROWS_AS(ops::frac_derivative(lin, 1.5), StepTooLarge);
  auto whole_order = request([](double s) { return s; }, 0, 2, Side::Right, 1.0, 1.0);
  CHECK_THROWS_AS(ops::frac_derivative(whole_order, 1e-4), DomainError);
}

TEST_CASE("left derivative carries the sign") {
  // For the RL kernel on the left side, D^a (b - s) at t equals Γ(2)/Γ(2-a) (b-t)^(1-a).
  auto r = request([](double s) { return 2.0 - s; }, 0, 2, Side::Left, 0.5, 1.0);
  CHECK(std::abs(ops::frac_derivative(r, 1e-4) - 1.0 / std::tgamma(1.5)) <= 1e-4);
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "fracjensen/errors.hpp"
#include "fracjensen/kernels.hpp"

using namespace fracjensen;
using kernels::Alpha;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kE = 2.7182818284590452354;
}  // namespace

TEST_CASE("alpha validation") {
  CHECK_THROWS_AS(Alpha(0.0), DomainError);
  CHECK_THROWS_AS(Alpha(-0.5), DomainError);
  CHECK_THROWS_AS(Alpha(NAN), DomainError);
  CHECK(Alpha(2.5).value() == 2.5);
  CHECK_THROWS_AS(Alpha::for_derivative(1.0), DomainError);
  CHECK(Alpha::for_derivative(0.3).value() == 0.3);
}

TEST_CASE("Riemann-Liouville kernel values") {
  const auto rl = kernels::make_riemann_liouville();
  CHECK(std::abs(kernels::kernel_T(rl, 1.0, 0.0, Alpha(0.5)) - kSqrtPi) <= 1e-9);
  CHECK(kernels::kernel_T(rl, 2.0, 1.0, Alpha(1.0)) == 1.0);
  CHECK(std::abs(kernels::kernel_T(rl, 0.0, 1.0, Alpha(0.5)) - kSqrtPi) <= 1e-9);
  CHECK(std::abs(kernels::kernel_T(rl, 1.0, 0.5, Alpha(0.5)) - 1.2533141373155003) <= 1e-12);
  CHECK_THROWS_AS(kernels::kernel_T(rl, 1.0, 1.0, Alpha(0.5)), SingularKernel);
  CHECK(kernels::kernel_T(rl, 1.0, 0.0, Alpha(1.0)) == 1.0);
}

TEST_CASE("Riemann-Liouville kernel is translation invariant") {
  const auto rl = kernels::make_riemann_liouville();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0), a(0.05, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng), s = u(rng), shift = u(rng), al = a(rng);
    if (t == s) continue;
    const double base = kernels::kernel_T(rl, t, s, Alpha(al));
    const double moved = kernels::kernel_T(rl, t + shift, s + shift, Alpha(al));
    const double oracle = std::tgamma(al) * std::pow(std::abs(t - s), 1.0 - al);
    CHECK(std::abs(base - oracle) <= 1e-14 * oracle);
    // Shifting rounds t - s; compare against the closed form of the rounded gap.
    const double gap = std::abs((t + shift) - (s + shift));
    CHECK(std::abs(moved - std::tgamma(al) * std::pow(gap, 1.0 - al)) <= 1e-14 * moved);
    CHECK(std::abs(moved - base) <= 1e-12 * base);
  }
}

TEST_CASE("Hadamard kernel follows T = G(|log t - log s|) / g'(s)") {
  const auto h = kernels::make_hadamard();
  CHECK(h.g_prime(2.0) == 0.5);
  // G(1, 1) = 1 and g'(1) = 1.
  CHECK(std::abs(kernels::kernel_T(h, kE, 1.0, Alpha(1.0)) - 1.0) <= 1e-14);
  // G(1, 1/2) = sqrt(pi) and g'(e) = 1/e.
  CHECK(std::abs(kernels::kernel_T(h, 1.0, kE, Alpha(0.5)) - kSqrtPi * kE) <= 1e-12);
  CHECK_THROWS_AS(kernels::kernel_T(h, 1.0, -1.0, Alpha(0.5)), DomainError);
  CHECK_THROWS_AS(kernels::kernel_T(h, 1.0, 0.0, Alpha(0.5)), DomainError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10.0), a(0.1, 1.5);
  for (int i = 0; i < 500; ++i) {
    const double t = u(rng), s = u(rng), al = a(rng);
    const double oracle = std::tgamma(al) * s * std::pow(std::abs(std::log(t / s)), 1.0 - al);
    CHECK(std::abs(kernels::kernel_T(h, t, s, Alpha(al)) - oracle) <= 1e-12 * oracle);
  }
}

TEST_CASE("g-weighted kernel") {
  const auto id = kernels::make_g_weighted([](double t) { return t; }, [](double) { return 1.0; },
                                           {0.0, 3.0});
  const auto rl = kernels::make_riemann_liouville();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 3.0), a(0.05, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double t = u(rng), s = u(rng), al = a(rng);
    if (t == s) continue;
    const double x = kernels::kernel_T(id, t, s, Alpha(al));
    const double y = kernels::kernel_T(rl, t, s, Alpha(al));
    CHECK(std::abs(x - y) <= 1e-14 * y);
  }

  const auto sq = kernels::make_g_weighted([](double t) { return t * t; },
                                           [](double t) { return 2 * t; }, {0.5, 3.0});
  CHECK(std::abs(kernels::kernel_T(sq, 2.0, 1.0, Alpha(0.5)) - 1.5349900619197327) <= 1e-6);

  CHECK_THROWS_AS(kernels::make_g_weighted([](double t) { return -t; },
                                           [](double) { return 1.0; }, {0.0, 1.0}),
                  ValidationError);
  // g' must be positive on the open interval.
  CHECK_THROWS_AS(kernels::make_g_weighted([](double t) { return t * t * t; },
                                           [](double t) { return 3 * t * t - 0.1; }, {-1.0, 1.0}),
                  ValidationError);
  const auto neg = kernels::make_g_weighted([](double t) { return t; }, [](double) { return 1.0; },
                                            {-2.0, -1.0});
  CHECK_FALSE(neg.warnings.empty());
}

TEST_CASE("custom kernel validation and exponent probing") {
  auto G = [](double x, double a) { return std::tgamma(a) * std::pow(x, 1.0 - a); };
  const auto k = kernels::make_custom([](double t) { return t; }, [](double) { return 1.0; }, G,
                                      {0.0, 1.0});
  CHECK_FALSE(k.power_form);
  for (double a : {0.3, 0.5, 0.9}) {
    const kernels::BoundKernel bound(k, Alpha(a));
    CHECK(std::abs(bound.singular_exponent(1.0) - a) <= 1e-6);
  }
  const kernels::BoundKernel smooth(k, Alpha(1.0));
  CHECK(smooth.singular_exponent(1.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(kernels::make_custom([](double t) { return t; }, [](double) { return 1.0; },
                                       [](double x, double) { return -x; }, {0.0, 1.0}),
                  ValidationError);
}

TEST_CASE("normalizer examples") {
  const auto rl = kernels::make_riemann_liouville();
  auto r = kernels::normalizer(rl, 0.0, 1.0, Alpha(0.5), 1e-10);
  CHECK(std::abs(r.value - 1.1283791670955126) <= 1e-8);
  CHECK(std::abs(kernels::normalizer(rl, 0.0, 1.0, Alpha(1.0)).value - 1.0) <= 1e-12);
  CHECK(std::abs(kernels::normalizer(rl, 0.0, 4.0, Alpha(0.5), 1e-10).value - 2.2567583341910251) <=
        1e-8);
  CHECK(std::abs(kernels::normalizer(rl, -1.5, 2.0, Alpha(1.0)).value - 3.5) <= 1e-12);
}

TEST_CASE("substituted and direct normalizers agree") {
  const auto rl = kernels::make_riemann_liouville();
  const auto had = kernels::make_hadamard();
  const auto gw = kernels::make_g_weighted([](double t) { return t * t; },
                                           [](double t) { return 2 * t; }, {0.5, 2.0});
  struct Case {
    const kernels::KernelSpec* k;
    double c, d;
  };
  for (const Case& c : {Case{&rl, 0.0, 1.0}, Case{&had, 1.0, 3.0}, Case{&gw, 0.5, 2.0}}) {
    for (double a : {0.3, 0.5, 0.9}) {
      const auto sub = kernels::normalizer(*c.k, c.c, c.d, Alpha(a));
      const auto dir = kernels::normalizer_direct(*c.k, c.c, c.d, Alpha(a));
      CHECK(std::abs(sub.value - dir.value) <= sub.error_estimate + dir.error_estimate);
      // Closed form: (g(d) - g(c))^a / Gamma(a + 1).
      const double span = c.k->g(c.d) - c.k->g(c.c);
      CHECK(sub.value == doctest::Approx(std::pow(span, a) / std::tgamma(a + 1)).epsilon(1e-8));
    }
  }
}

TEST_CASE("non-integrable 1/G diverges") {
  auto G = [](double x, double) { return x; };
  const auto k = kernels::make_custom([](double t) { return t; }, [](double) { return 1.0; }, G,
                                      {0.0, 1.0});
  CHECK_THROWS_AS(kernels::normalizer(k, 0.0, 1.0, Alpha(0.5)), DivergentIntegral);
}

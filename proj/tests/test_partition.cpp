#include <doctest.h>

#include <cmath>
#include <random>

#include "fk/errors.hpp"
#include "fk/partition.hpp"
#include "oracles.hpp"

using namespace fk;

namespace {
LinkPattern P(const char* s) { return parse_pattern(s); }
}  // namespace

TEST_CASE("coupling parameters") {
  const auto p = CouplingParams::fk_ising();
  CHECK(p.q == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p.h == 1.0 / 16.0);
  for (double k : {4.5, 5.0, 6.0, 7.5}) {
    const auto c = CouplingParams::from_kappa(k);
    CHECK(c.q == doctest::Approx(4 * std::pow(std::cos(4 * M_PI / k), 2)));
    CHECK(c.h == doctest::Approx((6 - k) / (2 * k)));
    CHECK(c.q > 0);
    CHECK(c.q < 4);
    CHECK(c.norm_const ==
          doctest::Approx(std::sqrt(c.q) * std::tgamma(2 - 8 / k) / std::pow(std::tgamma(1 - 4 / k), 2)));
  }
  CHECK_THROWS_AS(CouplingParams::from_kappa(4.0), DomainError);
  CHECK_THROWS_AS(CouplingParams::from_kappa(8.0), DomainError);
}

TEST_CASE("cross-ratio") {
  CHECK(cross_ratio(0, 1, 2, 3) == doctest::Approx(0.25));
  CHECK(cross_ratio(0, 1, 3, 4) == doctest::Approx(1.0 / 9.0));
  CHECK(cross_ratio(0, 2.5, 5, 7.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(cross_ratio(0, 2, 1, 3), PreconditionError);
}

TEST_CASE("point validation") {
  CHECK_THROWS_AS(check_points({0, 1, 2}), DimensionError);
  CHECK_THROWS_AS(check_points({1, 0}), ValidationError);
  CHECK_THROWS_AS(check_points({0, 1e-13}), DegenerateInputError);
  CHECK_THROWS_AS(f_beta(P("1-2,3-4"), {0, 1}), DimensionError);
}

TEST_CASE("f_beta closed values") {
  CHECK(f_beta(P("1-2"), {0, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const double v = std::sqrt(2.0) * std::sqrt(std::pow(0.75, 0.25) + std::pow(0.75, -0.25));
  CHECK(f_beta(P("1-2,3-4"), {0, 1, 2, 3}) == doctest::Approx(v).epsilon(1e-14));
}

TEST_CASE("f_beta agrees with the direct sign sum, and basic symmetries") {
  std::mt19937_64 g(11);
  for (int n = 1; n <= 5; ++n)
    for (const auto& b : enumerate_patterns(n))
      for (int t = 0; t < 5; ++t) {
        const auto x = oracle::random_points(g, 2 * n);
        const double f = f_beta(b, x);
        CHECK(f > 0);
        CHECK(f == doctest::Approx(oracle::f_beta(b, x)).epsilon(1e-12));
        auto xs = x;
        for (auto& v : xs) v += 3.25;
        CHECK(f_beta(b, xs) == doctest::Approx(f).epsilon(1e-13));
        for (auto& v : xs) v = 2.5 * (v - 3.25);
        CHECK(f_beta(b, xs) == doctest::Approx(std::pow(2.5, -n / 8.0) * f).epsilon(1e-13));
      }
}

TEST_CASE("Mobius covariance") {
  std::mt19937_64 g(5);
  const auto b = P("1-6,2-3,4-5");
  const auto x = oracle::random_points(g, 6);
  CHECK(f_beta_polygon(b, x, MobiusMap{}) == doctest::Approx(f_beta(b, x)).epsilon(1e-15));
  CHECK(f_beta_polygon(b, x, MobiusMap::make(2, 1, 0, 1)) == doctest::Approx(f_beta(b, x)).epsilon(1e-12));
  CHECK(f_beta_polygon(b, x, MobiusMap::make(1, 0, 0.05, 1)) == doctest::Approx(f_beta(b, x)).epsilon(1e-10));
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 20; ++t) {
    for (int n = 1; n <= 3; ++n)
      for (const auto& beta : enumerate_patterns(n)) {
        const auto y = oracle::random_points(g, 2 * n);
        // Pole to the left of all points keeps the order.
        const double pole = y.front() - 0.5 - std::abs(u(g));
        const double a = u(g);
        const MobiusMap m = MobiusMap::make(a, -a * pole - 1 - std::abs(u(g)), 1, -pole);
        CHECK(f_beta_polygon(beta, y, m) == doctest::Approx(f_beta(beta, y)).epsilon(1e-10));
      }
  }
  // Pole between the points breaks the order.
  CHECK_THROWS_AS(f_beta_polygon(P("1-2,3-4"), {0, 1, 2, 3}, MobiusMap::make(0, -1, 1, -1.5)), PreconditionError);
  CHECK_THROWS_AS(MobiusMap::make(1, 1, 1, 1), PreconditionError);
}

TEST_CASE("bound functions") {
  CHECK(bound_b(P("1-2"), {0, 1}) == doctest::Approx(1.0));
  CHECK(y_unnested(1, {0, 3.7}) == doctest::Approx(std::sqrt(2.0)));
  std::mt19937_64 g(3);
  for (int t = 0; t < 200; ++t) {
    const auto x = oracle::random_points(g, 4, 1e-3);
    const double y = y_unnested(2, x);
    CHECK(y >= 1.0);
    CHECK(y >= std::pow(oracle::cross_ratio(x[0], x[2], x[3], x[1]), 0.125));
    CHECK(y == doctest::Approx(f_beta(P("1-2,3-4"), x) / bound_b(P("1-2,3-4"), x)));
  }
}

TEST_CASE("BPZ residuals") {
  const auto p = CouplingParams::fk_ising();
  const Points x{0, 1, 2, 3};
  Evaluator one = [](const Points&) { return 1.0; };
  for (int j = 1; j <= 4; ++j) {
    double pot = 0;
    for (int i = 1; i <= 4; ++i)
      if (i != j) pot -= 2 * p.h / std::pow(x[i - 1] - x[j - 1], 2);
    CHECK(bpz_residual(one, x, j, p, 1e-3) == doctest::Approx(pot).epsilon(1e-9));
  }
  for (const auto& b : enumerate_patterns(2)) {
    Evaluator f = [&](const Points& y) { return f_beta(b, y); };
    for (int j = 1; j <= 4; ++j) {
      const double r1 = bpz_residual(f, x, j, p, 1e-3), r2 = bpz_residual(f, x, j, p, 5e-4);
      CHECK(std::abs(r1) / f_beta(b, x) < 1e-4);
      CHECK(std::abs(r1 / r2) == doctest::Approx(4.0).epsilon(0.15));
    }
  }
  Evaluator f = [](const Points& y) { return f_beta(parse_pattern("1-2,3-4"), y); };
  CHECK_THROWS_AS(bpz_residual(f, x, 1, p, 0.6), StepError);
  CHECK(default_step(Points{0, 0.5, 2, 3}) == doctest::Approx(5e-4));
}

TEST_CASE("asymptotic ratios") {
  const auto p = CouplingParams::fk_ising();
  {
    Evaluator f = [](const Points& y) { return f_beta(parse_pattern("1-2"), y); };
    CHECK(asy_ratio(f, P("1-2"), {0, 1}, 1, 1e-4, p) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  }
  const Points x{0, 1, 2, 3};
  for (const char* s : {"1-2,3-4", "1-4,2-3"}) {
    const auto b = P(s);
    Evaluator f = [&](const Points& y) { return f_beta(b, y); };
    const double xi = 1.5;
    const auto tgt = asy_target(b, 2, p);
    const double expect = tgt.factor * f_beta(tgt.reduced, drop_pair(x, 2));
    CHECK(asy_ratio(f, b, x, 2, xi, 1e-3, p) == doctest::Approx(expect).epsilon(0.01));
  }
  CHECK(asy_target(P("1-4,2-3"), 2, p).factor == doctest::Approx(std::sqrt(2.0)));
  CHECK(asy_target(P("1-2,3-4"), 2, p).factor == 1.0);
  CHECK(asy_target(P("1-2,3-4"), 2, p).reduced == P("1-2"));
}

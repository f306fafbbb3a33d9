#include <doctest.h>

#include <cmath>
#include <random>

#include "fk/coulomb.hpp"
#include "fk/errors.hpp"
#include "oracles.hpp"

using namespace fk;

namespace {
LinkPattern P(const char* s) { return parse_pattern(s); }

// sqrt(q) (x2-x1)^{1-6/kappa} through the Beta-function reduction, written
// out from Gamma values only.
double n1_oracle(double kappa, double gap) {
  const double q = 4 * std::pow(std::cos(4 * M_PI / kappa), 2);
  const double a = 1 - 4 / kappa;
  const double norm = std::sqrt(q) * std::tgamma(2 - 8 / kappa) / std::pow(std::tgamma(a), 2);
  const double beta_fn = std::tgamma(a) * std::tgamma(a) / std::tgamma(2 * a);
  return norm * std::pow(gap, 2 / kappa) * std::pow(gap, 1 - 8 / kappa) * beta_fn;
}
}  // namespace

TEST_CASE("N = 1 closed form at several kappa") {
  for (double kappa : {4.5, 5.0, 16.0 / 3.0, 6.0, 7.0, 7.5}) {
    const auto p = CouplingParams::from_kappa(kappa);
    for (double gap : {1.0, 0.3, 2.7}) {
      const double g = g_beta_numeric(P("1-2"), {0.5, 0.5 + gap}, p);
      CHECK(std::abs(g / n1_oracle(kappa, gap) - 1) < 1e-8);
    }
  }
  CHECK(g_beta_numeric(P("1-2"), {0, 1}, CouplingParams::fk_ising()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("equality with the explicit function at kappa = 16/3") {
  const auto p = CouplingParams::fk_ising();
  std::mt19937_64 g(2024);
  for (int n = 2; n <= 3; ++n)
    for (const auto& b : enumerate_patterns(n))
      for (int t = 0; t < (n == 2 ? 4 : 1); ++t) {
        const auto x = oracle::random_points(g, 2 * n, 0.2);
        const auto r = g_beta_detailed(b, x, p);
        CHECK(std::abs(r.value / oracle::f_beta(b, x) - 1) < 1e-8);
        CHECK(r.imag_rel < 1e-10);
      }
}

TEST_CASE("covariance under affine maps at general kappa") {
  const auto p = CouplingParams::from_kappa(5.5);
  const auto b = P("1-4,2-3");
  const Points x{0, 0.7, 1.5, 3.1};
  Points y;
  for (double v : x) y.push_back(2.0 * v - 1.0);
  const double tol = 1e-10;
  const double gx = g_beta_numeric(b, x, p, tol), gy = g_beta_numeric(b, y, p, tol);
  CHECK(std::abs(gy / (std::pow(2.0, -4 * p.h) * gx) - 1) < 2 * tol * 10);
}

TEST_CASE("integrand on the base region") {
  const auto p = CouplingParams::fk_ising();
  const Points x{0, 1};
  for (double u : {0.1, 0.5, 0.93}) {
    const auto br = base_branch(P("1-2"), x, {cplx(u, 0)});
    const cplx f = integrand_f(x, {cplx(u, 0)}, p, br);
    CHECK(std::abs(f.imag()) < 1e-15);
    CHECK(f.real() == doctest::Approx(std::pow(u * (1 - u), -0.75)).epsilon(1e-13));
  }
  const Points x2{0, 1, 2, 3};
  const std::vector<cplx> u{{0.5, 0}, {1.5, 0}};
  const auto br = base_branch(P("1-4,2-3"), x2, u);
  const cplx f = integrand_f(x2, u, p, br);
  CHECK(f.real() > 0);
  CHECK(std::abs(f.imag()) < 1e-14 * f.real());
  CHECK_THROWS_AS(base_branch(P("1-2"), x, {cplx(1.5, 0)}), PreconditionError);
  CHECK_THROWS_AS(integrand_f(x, {cplx(0, 0)}, p, base_branch(P("1-2"), x, {cplx(0.5, 0)})), SingularityError);
}

TEST_CASE("conjugate symmetry of the integrand") {
  const auto p = CouplingParams::from_kappa(6.2);
  const Points x{0, 1};
  const cplx u0(0.5, 0);
  auto up = base_branch(P("1-2"), x, {u0});
  auto dn = up;
  for (int k = 1; k <= 40; ++k) {
    const cplx z(0.5 + 0.02 * k, 0.03 * k);
    continue_branch(up, x, {z});
    continue_branch(dn, x, {std::conj(z)});
    const cplx a = integrand_f(x, {z}, p, up), b = integrand_f(x, {std::conj(z)}, p, dn);
    CHECK(std::abs(a - std::conj(b)) < 1e-13 * std::abs(a));
  }
}

TEST_CASE("continuation agrees with the closed-form branch and rejects large steps") {
  const auto p = CouplingParams::fk_ising();
  const Points x{0, 1, 2, 3};
  const auto b = P("1-4,2-3");
  std::vector<cplx> u{{0.5, 0}, {1.5, 0}};
  auto st = base_branch(b, x, u);
  // Lift the inner variable, then the outer one above it.
  for (int k = 1; k <= 20; ++k) {
    u[1] = cplx(1.5, 0.01 * k);
    continue_branch(st, x, u);
  }
  for (int k = 1; k <= 50; ++k) {
    u[0] = cplx(0.5 + 0.02 * k, 0.015 * k);
    continue_branch(st, x, u);
  }
  const auto cb = contour_branch(b, x, u);
  const cplx a = integrand_f(x, u, p, st), c = integrand_f(x, u, p, cb);
  CHECK(std::abs(a - c) < 1e-12 * std::abs(a));
  auto s2 = base_branch(P("1-2"), {0, 1}, {cplx(0.5, 0)});
  CHECK_THROWS_AS(continue_branch(s2, {0, 1}, {cplx(-3, -0.1)}), QuadratureError);
}

TEST_CASE("contours") {
  const Points x{0, 1, 2, 3};
  const auto one = build_contours(P("1-2"), {0, 1});
  REQUIRE(one.size() == 1);
  CHECK(one[0].start == 0);
  CHECK(one[0].end == 1);
  const auto nested = build_contours(P("1-4,2-3"), x);
  REQUIRE(nested.size() == 2);
  CHECK(nested[0].depth == 1);
  CHECK(nested[1].depth == 0);
  CHECK(nested[0].height > nested[1].height);
  for (const auto& c : nested) {
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      CHECK(c.nodes[i].imag() > 0);
      if (i) CHECK(c.s[i] > c.s[i - 1]);
    }
  }
  // The outer semi-ellipse stays above the inner one everywhere over [1,2].
  const auto& o = nested[0];
  const auto& in = nested[1];
  for (const auto& z : in.nodes) {
    const double c = 0.5 * (o.start + o.end), R = 0.5 * (o.end - o.start);
    const double t = (z.real() - c) / R;
    CHECK(o.height * std::sqrt(1 - t * t) > z.imag());
  }
  const auto flat = build_contours(P("1-2,3-4,5-6"), {0, 1, 2, 3, 4, 5});
  for (const auto& c : flat) CHECK(c.depth == 0);
  CHECK(nesting_depths(P("1-6,2-5,3-4")) == std::vector<int>{2, 1, 0});
}

TEST_CASE("Pochhammer constant") {
  CHECK(pochhammer_constant(CouplingParams::from_kappa(16.0 / 3.0)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(pochhammer_constant(CouplingParams::from_kappa(7.999999999)) == doctest::Approx(4.0).epsilon(1e-8));
  for (double kappa : {16.0 / 3.0, 5.0, 6.5}) CHECK(h_vs_hcirc_check({0, 1}, kappa) < 1e-10);
}

TEST_CASE("budget and capacity errors") {
  const auto p = CouplingParams::fk_ising();
  CHECK_THROWS_AS(g_beta_numeric(P("1-2,3-4,5-6,7-8"), {0, 1, 2, 3, 4, 5, 6, 7}, p), CapacityError);
  CHECK_THROWS_AS(g_beta_numeric(P("1-2"), {0, 1}, p, 0.0), PreconditionError);
}

#include "fk/simd.hpp"

TEST_CASE("quadrature is backend independent") {
  const auto p = CouplingParams::fk_ising();
  const Points x{0, 0.6, 1.3, 2.2, 3.0, 4.1};
  const auto b = parse_pattern("1-6,2-3,4-5");
  const auto saved = simd::active();
  simd::select(simd::Backend::scalar);
  const double ref = g_beta_numeric(b, x, p);
  for (auto be : {simd::Backend::avx2, simd::Backend::neon}) {
    if (!simd::available(be)) continue;
    simd::select(be);
    CHECK(std::abs(g_beta_numeric(b, x, p) / ref - 1) < 1e-13);
  }
  simd::select(saved);
}

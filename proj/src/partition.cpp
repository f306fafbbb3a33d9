#include "fk/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fk/errors.hpp"

namespace fk {

void check_points(const Points& x) {
  if (x.empty() || x.size() % 2) throw DimensionError("point configuration must have even positive length");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (!(x[i] < x[i + 1])) throw ValidationError("points must be strictly increasing");
    if (x[i + 1] - x[i] < 1e-12) throw DegenerateInputError("points closer than 1e-12");
  }
}

void check_points(const Points& x, int n_links) {
  if (n_links == 0 && x.empty()) return;
  check_points(x);
  if (static_cast<int>(x.size()) != 2 * n_links)
    throw DimensionError("expected " + std::to_string(2 * n_links) + " points, got " + std::to_string(x.size()));
}

CouplingParams CouplingParams::from_kappa(double kappa) {
  if (!(kappa > 4.0 && kappa < 8.0)) throw DomainError("kappa must lie in (4,8)");
  CouplingParams p;
  p.kappa = kappa;
  if (kappa == 16.0 / 3.0) {
    p.q = 2.0;
    p.h = 1.0 / 16.0;
  } else {
    const double c = std::cos(4.0 * std::numbers::pi / kappa);
    p.q = 4.0 * c * c;
    p.h = (6.0 - kappa) / (2.0 * kappa);
  }
  const double g = std::tgamma(1.0 - 4.0 / kappa);
  p.norm_const = std::sqrt(p.q) * std::tgamma(2.0 - 8.0 / kappa) / (g * g);
  return p;
}

double cross_ratio(double y1, double y2, double y3, double y4) {
  if (!(y1 < y2 && y2 < y3 && y3 < y4)) throw PreconditionError("cross_ratio: points must be increasing");
  return cross_ratio_abs(y1, y2, y3, y4);
}

double cross_ratio_abs(double y1, double y2, double y3, double y4) {
  return std::abs(y2 - y1) * std::abs(y4 - y3) / (std::abs(y3 - y1) * std::abs(y4 - y2));
}

double log_f_beta(const LinkPattern& beta, const Points& x) {
  const int n = beta.n();
  check_points(x, n);
  if (n > 12) throw CapacityError("f_beta: N above 12");
  if (n == 0) return 0.0;
  const auto& L = beta.links();
  auto X = [&](int i) { return x[i - 1]; };
  double logb = 0.0;
  for (const auto& l : L) logb -= std::log(X(l[1]) - X(l[0])) / 8.0;
  // c[s][t] = log chi / 4 for s < t
  std::vector<double> c(n * n, 0.0);
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t)
      c[s * n + t] = std::log(cross_ratio_abs(X(L[s][0]), X(L[t][0]), X(L[t][1]), X(L[s][1]))) / 4.0;
  // sigma_1 = +1 by the global sign symmetry; log-sum-exp over the rest.
  const std::size_t terms = std::size_t{1} << (n - 1);
  std::vector<double> e(terms);
  double emax = -INFINITY;
  for (std::size_t m = 0; m < terms; ++m) {
    double v = 0.0;
    for (int s = 0; s < n; ++s) {
      const int ss = s == 0 ? 1 : ((m >> (s - 1)) & 1 ? -1 : 1);
      for (int t = s + 1; t < n; ++t) {
        const int st = (m >> (t - 1)) & 1 ? -1 : 1;
        v += ss * st * c[s * n + t];
      }
    }
    e[m] = v;
    emax = std::max(emax, v);
  }
  double acc = 0.0;
  for (double v : e) acc += std::exp(v - emax);
  return logb + 0.5 * (std::log(2.0 * acc) + emax);
}

double f_beta(const LinkPattern& beta, const Points& x) { return std::exp(log_f_beta(beta, x)); }

MobiusMap MobiusMap::make(double a, double b, double c, double d) {
  if (!(a * d - b * c > 0)) throw PreconditionError("Mobius map needs ad - bc > 0");
  return MobiusMap{a, b, c, d};
}

double MobiusMap::derivative(double z) const {
  const double den = c * z + d;
  return (a * d - b * c) / (den * den);
}

double f_beta_polygon(const LinkPattern& beta, const Points& x, const MobiusMap& phi) {
  check_points(x, beta.n());
  Points y(x.size());
  double logd = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (phi.c * x[i] + phi.d == 0.0) throw PreconditionError("Mobius map has a pole at a marked point");
    y[i] = phi(x[i]);
    logd += std::log(phi.derivative(x[i]));
  }
  for (std::size_t i = 0; i + 1 < y.size(); ++i)
    if (!(y[i] < y[i + 1])) throw PreconditionError("Mobius map does not preserve the order of the points");
  return std::exp(logd / 16.0 + log_f_beta(beta, y));
}

double bound_b(const LinkPattern& alpha, const Points& x) {
  check_points(x, alpha.n());
  double lb = 0.0;
  for (const auto& l : alpha.links()) lb -= std::log(x[l[1] - 1] - x[l[0] - 1]) / 8.0;
  return std::exp(lb);
}

double y_unnested(int n, const Points& x) {
  const auto u = LinkPattern::unnested(n);
  return std::exp(log_f_beta(u, x) - std::log(bound_b(u, x)));
}

double default_step(const Points& x) {
  double g = INFINITY;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) g = std::min(g, x[i + 1] - x[i]);
  return 1e-3 * g;
}

double bpz_residual(const Evaluator& f, const Points& x, int j, const CouplingParams& p, double step) {
  check_points(x);
  const int m = static_cast<int>(x.size());
  if (j < 1 || j > m) throw PreconditionError("bpz_residual: index out of range");
  if (!(step > 0)) throw StepError("bpz_residual: step must be positive");
  double gap = INFINITY;
  for (int i = 0; i + 1 < m; ++i) gap = std::min(gap, x[i + 1] - x[i]);
  if (step >= 0.5 * gap) throw StepError("bpz_residual: step breaks the ordering of the points");

  auto shifted = [&](int i, double s) {
    Points y = x;
    y[i - 1] += s;
    return f(y);
  };
  const double f0 = f(x);
  const double xj = x[j - 1];
  double r = p.kappa / 2.0 * (shifted(j, step) - 2.0 * f0 + shifted(j, -step)) / (step * step);
  for (int i = 1; i <= m; ++i) {
    if (i == j) continue;
    const double dx = x[i - 1] - xj;
    const double di = (shifted(i, step) - shifted(i, -step)) / (2.0 * step);
    r += 2.0 / dx * di - 2.0 * p.h / (dx * dx) * f0;
  }
  return r;
}

Points drop_pair(const Points& x, int j) {
  Points y;
  for (int i = 1; i <= static_cast<int>(x.size()); ++i)
    if (i != j && i != j + 1) y.push_back(x[i - 1]);
  return y;
}

double asy_ratio(const Evaluator& f, const LinkPattern& beta, Points x, int j, double xi, double d,
                 const CouplingParams& p) {
  if (static_cast<int>(x.size()) != beta.points()) throw DimensionError("asy_ratio: point count mismatch");
  if (j < 1 || j >= beta.points()) throw PreconditionError("asy_ratio: index out of range");
  x[j - 1] = xi - d / 2.0;
  x[j] = xi + d / 2.0;
  check_points(x);
  return f(x) * std::pow(d, 2.0 * p.h);
}

double asy_ratio(const Evaluator& f, const LinkPattern& beta, Points x, int j, double d,
                 const CouplingParams& p) {
  const double xi = 0.5 * (x[j - 1] + x[j]);
  return asy_ratio(f, beta, std::move(x), j, xi, d, p);
}

AsyTarget asy_target(const LinkPattern& beta, int j, const CouplingParams& p) {
  if (beta.has_link(j, j + 1)) return {remove_link(beta, j), std::sqrt(p.q)};
  return {remove_link(tie(beta, j), j), 1.0};
}

}  // namespace fk

#pragma once

// Independent reference implementations used only by tests.

#include <algorithm>
#include <cmath>
#include <array>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "fk/linkpat.hpp"

namespace oracle {

inline std::size_t catalan(int n) {
  std::vector<std::size_t> c(n + 1, 0);
  c[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int i = 0; i < k; ++i) c[k] += c[i] * c[k - 1 - i];
  return c[n];
}

// Meander loops as connected components of the graph on 2N endpoints with
// one edge per link of alpha and one per link of beta.
inline int loops(const fk::LinkPattern& a, const fk::LinkPattern& b) {
  const int P = a.points();
  std::vector<int> par(P + 1);
  std::iota(par.begin(), par.end(), 0);
  auto find = [&](int v) {
    while (par[v] != v) v = par[v];
    return v;
  };
  for (const auto* pat : {&a, &b})
    for (auto [x, y] : pat->links()) par[find(x)] = find(y);
  int c = 0;
  for (int v = 1; v <= P; ++v) c += find(v) == v;
  return c;
}

// All perfect matchings of {1..2N} filtered by planarity.
inline std::vector<std::vector<std::array<int, 2>>> planar_matchings(int n) {
  std::vector<std::vector<std::array<int, 2>>> out;
  std::vector<std::array<int, 2>> cur;
  std::vector<bool> used(2 * n + 1, false);
  auto crosses = [](std::array<int, 2> p, std::array<int, 2> q) {
    return (p[0] < q[0] && q[0] < p[1] && p[1] < q[1]) || (q[0] < p[0] && p[0] < q[1] && q[1] < p[1]);
  };
  std::function<void()> rec = [&] {
    int i = 1;
    while (i <= 2 * n && used[i]) ++i;
    if (i > 2 * n) {
      out.push_back(cur);
      return;
    }
    used[i] = true;
    for (int j = i + 1; j <= 2 * n; ++j) {
      if (used[j]) continue;
      std::array<int, 2> l{i, j};
      bool ok = true;
      for (auto& c : cur) ok = ok && !crosses(c, l);
      if (!ok) continue;
      used[j] = true;
      cur.push_back(l);
      rec();
      cur.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  rec();
  return out;
}

inline double cross_ratio(double a, double b, double c, double d) {
  return std::abs(b - a) * std::abs(d - c) / (std::abs(c - a) * std::abs(d - b));
}

// Direct sum over all 2^N sign vectors, no logarithms.
inline double f_beta(const fk::LinkPattern& beta, const std::vector<double>& x) {
  const int n = beta.n();
  const auto& L = beta.links();
  double pre = 1;
  for (auto [a, b] : L) pre *= std::pow(x[b - 1] - x[a - 1], -0.125);
  double sum = 0;
  for (int m = 0; m < (1 << n); ++m) {
    double t = 1;
    for (int s = 0; s < n; ++s)
      for (int u = s + 1; u < n; ++u) {
        const int ss = (m >> s & 1) ? 1 : -1, su = (m >> u & 1) ? 1 : -1;
        const double chi = cross_ratio(x[L[s][0] - 1], x[L[u][0] - 1], x[L[u][1] - 1], x[L[s][1] - 1]);
        t *= std::pow(chi, 0.25 * ss * su);
      }
    sum += t;
  }
  return pre * std::sqrt(sum);
}

inline std::vector<double> random_points(std::mt19937_64& g, int count, double min_gap = 0.05) {
  std::uniform_real_distribution<double> u(min_gap, 1.0);
  std::vector<double> x(count);
  double t = std::uniform_real_distribution<double>(-1.0, 1.0)(g);
  for (auto& v : x) {
    v = t;
    t += u(g);
  }
  return x;
}

// Gauss hypergeometric series, with the Pfaff transformation for z < -1/2.
inline double hyp2f1(double a, double b, double c, double z) {
  if (z < -0.5) return std::pow(1 - z, -a) * hyp2f1(a, c - b, c, z / (z - 1));
  double term = 1, sum = 1;
  for (int k = 0; k < 100000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Plain AGM complete elliptic integral, iterated to a fixed point.
inline double elliptic_k(double k) {
  long double a = 1, b = std::sqrt(1.0L - (long double)k * k);
  for (int i = 0; i < 60; ++i) {
    const long double an = (a + b) / 2, bn = std::sqrt(a * b);
    a = an;
    b = bn;
  }
  return static_cast<double>(M_PI / (2 * a));
}

// Composite Gauss-Legendre on [lo, hi] with the given number of panels.
template <class F>
double gauss_legendre(F f, double lo, double hi, int panels) {
  static const double xg[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                               0.9061798459386640};
  static const double wg[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                               0.2369268850561891};
  const double h = (hi - lo) / panels;
  double s = 0;
  for (int p = 0; p < panels; ++p) {
    const double m = lo + (p + 0.5) * h;
    for (int i = 0; i < 5; ++i) s += wg[i] * f(m + 0.5 * h * xg[i]);
  }
  return 0.5 * h * s;
}

}  // namespace oracle

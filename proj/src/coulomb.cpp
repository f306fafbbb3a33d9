#include "fk/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>


#include "fk/errors.hpp"
#include "fk/simd.hpp"
#include "fk/special.hpp"

namespace fk {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Kronrod 15 nodes on [-1,1]; Gauss-7 weights are zero off the Gauss nodes.
struct GK15 {
  std::array<double, 15> x{}, wk{}, wg{};
  GK15() {
    const double a[8] = {0, 0.20778495500789848, 0.40584515137739718, 0.58608723546769115,
                         0.74153118559939446, 0.8648644233597691, 0.94910791234275849, 0.99145537112081261};
    const double k[8] = {0.20948214108472782, 0.20443294007529889, 0.19035057806478542, 0.16900472663926791,
                         0.14065325971552592, 0.10479001032225019, 0.063092092629978558, 0.022935322010529224};
    const double g[8] = {0.4179591836734694, 0, 0.38183005050511892, 0, 0.27970539148927664, 0,
                         0.1294849661688697, 0};
    for (int i = 0; i < 8; ++i) {
      x[7 + i] = a[i];
      x[7 - i] = -a[i];
      wk[7 + i] = wk[7 - i] = k[i];
      wg[7 + i] = wg[7 - i] = g[i];
    }
  }
};

const GK15& gk15() {
  static const GK15 t;
  return t;
}

double substitution_exponent(double kappa) { return kappa / (kappa - 4.0); }

struct NodeGeom {
  cplx u, du_ds;
  std::vector<cplx> diff;  // u - x_i
};

void geometry(const Contour& c, const Points& x, double m, double s, NodeGeom& g) {
  const double ls = std::log(s), l1 = std::log1p(-s);
  const double lm = m * ls, ln = m * l1;
  const double big = std::max(lm, ln);
  const double ea = std::exp(lm - big), eb = std::exp(ln - big);
  const double t0 = kPi * ea / (ea + eb);  // theta
  const double t1 = kPi * eb / (ea + eb);  // pi - theta
  const double logden = big + std::log(ea + eb);
  const double dtheta = kPi * m * std::exp((m - 1.0) * (ls + l1) - 2.0 * logden);
  const double R = 0.5 * (c.end - c.start), H = c.height, cen = 0.5 * (c.start + c.end);
  const double sin_t = std::sin(std::min(t0, t1));
  const double cos_t = t0 < t1 ? std::cos(t0) : -std::cos(t1);
  const double sh0 = std::sin(0.5 * t0), sh1 = std::sin(0.5 * t1);
  g.u = cplx(cen - R * cos_t, H * sin_t);
  g.du_ds = cplx(R * sin_t, H * cos_t) * dtheta;
  g.diff.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int idx = static_cast<int>(i) + 1;
    if (idx == c.a)
      g.diff[i] = cplx(2.0 * R * sh0 * sh0, H * sin_t);
    else if (idx == c.b)
      g.diff[i] = cplx(-2.0 * R * sh1 * sh1, H * sin_t);
    else
      g.diff[i] = cplx((cen - x[i]) - R * cos_t, H * sin_t);
  }
}

// log of prod_i (u - x_i)^{-4/kappa} on the contour branch of link starting at a.
cplx log_single(const std::vector<cplx>& diff, int a, double kappa) {
  double lm = 0, ph = 0;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    const int idx = static_cast<int>(i) + 1;
    lm += std::log(std::abs(diff[i]));
    ph += std::arg(diff[i]) - (idx > a ? kPi : 0.0);
  }
  return -4.0 / kappa * cplx(lm, ph);
}

double pair_phase_closed(cplx d, bool nested) {
  double ph = std::arg(d);
  if (nested && ph > kPi / 2) ph -= 2 * kPi;
  return ph;
}

struct PanelEst {
  double s0, s1;
  cplx val;
  double err, absval;
};

struct Integrand {
  const Contour& c;
  const Points& x;
  double m, kappa;
  mutable NodeGeom g;
  cplx operator()(double s) const {
    geometry(c, x, m, s, g);
    return g.du_ds * std::exp(log_single(g.diff, c.a, kappa));
  }
};

PanelEst estimate(const Integrand& f, double s0, double s1) {
  const auto& t = gk15();
  const double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
  cplx k = 0, gs = 0;
  double ab = 0;
  for (int i = 0; i < 15; ++i) {
    const cplx v = f(mid + half * t.x[i]);
    k += t.wk[i] * v;
    gs += t.wg[i] * v;
    ab += t.wk[i] * std::abs(v);
  }
  return {s0, s1, k * half, std::abs(k - gs) * half, ab * half};
}

void adapt(Contour& c, const Points& x, const ContourPolicy& pol) {
  const double m = substitution_exponent(pol.kappa);
  Integrand f{c, x, m, pol.kappa, {}};
  std::vector<PanelEst> ps;
  for (int i = 0; i < 4; ++i) ps.push_back(estimate(f, i / 4.0, (i + 1) / 4.0));
  while (static_cast<int>(ps.size()) < pol.max_panels) {
    double err = 0, ab = 0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      err += ps[i].err;
      ab += ps[i].absval;
      if (ps[i].err > ps[worst].err) worst = i;
    }
    if (err <= pol.panel_tol * ab) break;
    const PanelEst w = ps[worst];
    const double mid = 0.5 * (w.s0 + w.s1);
    ps[worst] = estimate(f, w.s0, mid);
    ps.push_back(estimate(f, mid, w.s1));
  }
  c.panels.clear();
  for (const auto& p : ps) c.panels.push_back({p.s0, p.s1});
  std::sort(c.panels.begin(), c.panels.end());
}

void fill_nodes(Contour& c, const Points& x, double kappa) {
  const auto& t = gk15();
  const double m = substitution_exponent(kappa);
  Integrand f{c, x, m, kappa, {}};
  c.s.clear();
  c.nodes.clear();
  c.weights.clear();
  for (const auto& p : c.panels) {
    const double mid = 0.5 * (p[0] + p[1]), half = 0.5 * (p[1] - p[0]);
    for (int i = 0; i < 15; ++i) {
      const double s = mid + half * t.x[i];
      const cplx v = f(s);
      c.s.push_back(s);
      c.nodes.push_back(f.g.u);
      c.weights.push_back(t.wk[i] * half * v);
    }
  }
}

void bisect(Contour& c) {
  std::vector<std::array<double, 2>> out;
  for (const auto& p : c.panels) {
    const double mid = 0.5 * (p[0] + p[1]);
    out.push_back({p[0], mid});
    out.push_back({mid, p[1]});
  }
  c.panels = std::move(out);
}

double wrap_pi(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

// Phase continuity along a contour discretization.
void check_single_steps(const Contour& c, const Points& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 1; k < c.nodes.size(); ++k) {
      const double d = std::arg(c.nodes[k] - x[i]) - std::arg(c.nodes[k - 1] - x[i]);
      if (std::abs(d) >= kPi / 2) throw QuadratureError("branch step contract violated on a contour");
    }
  }
}

struct SoA {
  std::vector<double> re, im;
  void resize(std::size_t n) {
    re.assign(n, 0);
    im.assign(n, 0);
  }
  simd::CView row(std::size_t off) const { return {re.data() + off, im.data() + off}; }
  cplx at(std::size_t i) const { return {re[i], im[i]}; }
};

SoA pair_table(const Contour& cr, const Contour& cs, bool nested, double kappa) {
  const std::size_t nr = cr.nodes.size(), ns = cs.nodes.size();
  SoA t;
  t.resize(nr * ns);
  std::vector<double> ph(nr * ns);
  const double e = 8.0 / kappa;
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < ns; ++j) {
      const cplx d = cs.nodes[j] - cr.nodes[i];
      const double a = std::abs(d);
      if (!(a > 0)) throw SingularityError("contours intersect");
      const double p = pair_phase_closed(d, nested);
      ph[i * ns + j] = p;
      const cplx v = std::exp(e * cplx(std::log(a), p));
      t.re[i * ns + j] = v.real();
      t.im[i * ns + j] = v.imag();
    }
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < ns; ++j) {
      if (j > 0 && std::abs(ph[i * ns + j] - ph[i * ns + j - 1]) >= kPi / 2)
        throw QuadratureError("branch step contract violated for a pair factor");
      if (i > 0 && std::abs(ph[i * ns + j] - ph[(i - 1) * ns + j]) >= kPi / 2)
        throw QuadratureError("branch step contract violated for a pair factor");
    }
  return t;
}

SoA to_soa(const std::vector<cplx>& v) {
  SoA t;
  t.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    t.re[i] = v[i].real();
    t.im[i] = v[i].imag();
  }
  return t;
}

cplx tensor_sum(const LinkPattern& beta, const std::vector<Contour>& cs, double kappa) {
  const int n = beta.n();
  const auto& L = beta.links();
  auto nested = [&](int r, int s) { return L[s][1] < L[r][1]; };
  if (n == 1) {
    cplx acc = 0;
    for (const auto& w : cs[0].weights) acc += w;
    return acc;
  }
  if (n == 2) {
    const SoA p12 = pair_table(cs[0], cs[1], nested(0, 1), kappa);
    const SoA a2 = to_soa(cs[1].weights);
    const std::size_t n2 = cs[1].nodes.size();
    cplx acc = 0;
    for (std::size_t i = 0; i < cs[0].nodes.size(); ++i)
      acc += cs[0].weights[i] * simd::dot2(a2.row(0), p12.row(i * n2), n2);
    return acc;
  }
  const SoA p12 = pair_table(cs[0], cs[1], nested(0, 1), kappa);
  const SoA p13 = pair_table(cs[0], cs[2], nested(0, 2), kappa);
  const SoA p23 = pair_table(cs[1], cs[2], nested(1, 2), kappa);
  const SoA a3 = to_soa(cs[2].weights);
  const std::size_t n1 = cs[0].nodes.size(), n2 = cs[1].nodes.size(), n3 = cs[2].nodes.size();
  cplx acc = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    cplx row = 0;
    for (std::size_t j = 0; j < n2; ++j) {
      const cplx inner = simd::dot3(a3.row(0), p13.row(i * n3), p23.row(j * n3), n3);
      row += cs[1].weights[j] * p12.at(i * n2 + j) * inner;
    }
    acc += cs[0].weights[i] * row;
  }
  return acc;
}

}  // namespace

std::vector<int> nesting_depths(const LinkPattern& beta) {
  const int n = beta.n();
  const auto& L = beta.links();
  std::vector<int> d(n, 0);
  // Links sorted by span, so inner links are settled first.
  std::vector<int> order(n);
  for (int r = 0; r < n; ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return L[a][1] - L[a][0] < L[b][1] - L[b][0]; });
  for (int r : order)
    for (int s = 0; s < n; ++s)
      if (L[r][0] < L[s][0] && L[s][1] < L[r][1]) d[r] = std::max(d[r], d[s] + 1);
  return d;
}

std::vector<Contour> build_contours(const LinkPattern& beta, const Points& x, const ContourPolicy& policy) {
  check_points(x, beta.n());
  if (!(policy.kappa > 4 && policy.kappa < 8)) throw DomainError("build_contours: kappa must lie in (4,8)");
  const auto depth = nesting_depths(beta);
  std::vector<Contour> out;
  for (int r = 0; r < beta.n(); ++r) {
    Contour c;
    c.a = beta.links()[r][0];
    c.b = beta.links()[r][1];
    c.start = x[c.a - 1];
    c.end = x[c.b - 1];
    c.depth = depth[r];
    c.height = policy.height_factor * (c.end - c.start) * (1 + c.depth);
    adapt(c, x, policy);
    fill_nodes(c, x, policy.kappa);
    out.push_back(std::move(c));
  }
  return out;
}

BranchState base_branch(const LinkPattern& beta, const Points& x, const std::vector<cplx>& u) {
  const int n = beta.n(), m = beta.points();
  check_points(x, n);
  if (static_cast<int>(u.size()) != n) throw DimensionError("base_branch: one u per link expected");
  for (int r = 0; r < n; ++r) {
    const int a = beta.links()[r][0];
    if (u[r].imag() != 0 || !(u[r].real() > x[a - 1] && u[r].real() < x[a]))
      throw PreconditionError("base_branch: u_r must be real inside (x_{a_r}, x_{a_r + 1})");
  }
  BranchState st{beta, u, std::vector<double>(n * m, 0.0), std::vector<double>(n * n, 0.0)};
  return st;
}

void continue_branch(BranchState& st, const Points& x, const std::vector<cplx>& un) {
  const int n = st.beta.n(), m = st.beta.points();
  if (static_cast<int>(un.size()) != n) throw DimensionError("continue_branch: size mismatch");
  auto step = [](cplx from, cplx to) {
    const double d = wrap_pi(std::arg(to) - std::arg(from));
    if (std::abs(d) >= kPi / 2) throw QuadratureError("branch step contract violated: phase increment >= pi/2");
    return d;
  };
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < m; ++i) st.single_phase[r * m + i] += step(st.u[r] - x[i], un[r] - x[i]);
    for (int s = r + 1; s < n; ++s) st.pair_phase[r * n + s] += step(st.u[s] - st.u[r], un[s] - un[r]);
  }
  st.u = un;
}

BranchState contour_branch(const LinkPattern& beta, const Points& x, const std::vector<cplx>& u) {
  const int n = beta.n(), m = beta.points();
  check_points(x, n);
  if (static_cast<int>(u.size()) != n) throw DimensionError("contour_branch: one u per link expected");
  BranchState st{beta, u, std::vector<double>(n * m, 0.0), std::vector<double>(n * n, 0.0)};
  const auto& L = beta.links();
  for (int r = 0; r < n; ++r) {
    if (u[r].imag() < 0) throw PreconditionError("contour_branch: u must lie in the closed upper half-plane");
    for (int i = 0; i < m; ++i)
      st.single_phase[r * m + i] = std::arg(u[r] - x[i]) - (i + 1 > L[r][0] ? kPi : 0.0);
    for (int s = r + 1; s < n; ++s)
      st.pair_phase[r * n + s] = pair_phase_closed(u[s] - u[r], L[s][1] < L[r][1]);
  }
  return st;
}

cplx integrand_f(const Points& x, const std::vector<cplx>& u, const CouplingParams& p, const BranchState& br) {
  const int n = br.beta.n(), m = br.beta.points();
  check_points(x, n);
  if (static_cast<int>(u.size()) != n) throw DimensionError("integrand_f: one u per link expected");
  double scale = x.back() - x.front();
  double lm = 0, ph = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) lm += 2.0 / p.kappa * std::log(x[j] - x[i]);
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < m; ++i) {
      const double a = std::abs(u[r] - x[i]);
      if (a < 1e-14 * scale) throw SingularityError("integration variable hits a marked point");
      lm -= 4.0 / p.kappa * std::log(a);
      ph -= 4.0 / p.kappa * br.single_phase[r * m + i];
    }
    for (int s = r + 1; s < n; ++s) {
      const double a = std::abs(u[s] - u[r]);
      if (a < 1e-14 * scale) throw SingularityError("two integration variables coincide");
      lm += 8.0 / p.kappa * std::log(a);
      ph += 8.0 / p.kappa * br.pair_phase[r * n + s];
    }
  }
  return std::exp(cplx(lm, ph));
}

GResult g_beta_detailed(const LinkPattern& beta, const Points& x, const CouplingParams& p, double tol) {
  const int n = beta.n();
  check_points(x, n);
  if (n > 3) throw CapacityError("g_beta_numeric: N above 3 exceeds the quadrature budget");
  if (!(tol > 0)) throw PreconditionError("g_beta_numeric: tol must be positive");
  ContourPolicy pol;
  pol.kappa = p.kappa;
  pol.panel_tol = std::clamp(tol * 1e-2, 1e-14, 1e-6);
  auto cs = build_contours(beta, x, pol);
  for (const auto& c : cs) check_single_steps(c, x);

  double logpre = n * std::log(p.norm_const);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) logpre += 2.0 / p.kappa * std::log(x[j] - x[i]);
  const double pre = std::exp(logpre);

  cplx coarse = pre * tensor_sum(beta, cs, p.kappa);
  const std::size_t budget = n == 3 ? 2400 : n == 2 ? 20000 : 200000;
  for (int round = 0;; ++round) {
    for (auto& c : cs) {
      bisect(c);
      fill_nodes(c, x, p.kappa);
    }
    std::size_t nodes = 0;
    for (const auto& c : cs) nodes = std::max(nodes, c.nodes.size());
    const cplx fine = pre * tensor_sum(beta, cs, p.kappa);
    const double change = std::abs(fine - coarse) / std::abs(fine);
    if (change <= tol || nodes * 2 > budget || round >= 3) {
      if (change > tol) throw QuadratureError("g_beta_numeric: tolerance not reached within the node budget");
      GResult res{fine.real(), std::abs(fine.imag()) / std::abs(fine), change, nodes};
      if (res.imag_rel > std::max(tol, 1e-12))
        throw QuadratureError("g_beta_numeric: imaginary residue exceeds tolerance");
      if (!(res.value > 0)) throw QuadratureError("g_beta_numeric: result is not positive");
      return res;
    }
    coarse = fine;
  }
}

double g_beta_numeric(const LinkPattern& beta, const Points& x, const CouplingParams& p, double tol) {
  return g_beta_detailed(beta, x, p, tol).value;
}

double pochhammer_constant(const CouplingParams& p) {
  const double s = std::sin(4.0 * kPi / p.kappa);
  return 4.0 * s * s;
}

double h_vs_hcirc_check(const Points& x, double kappa) {
  check_points(x, 1);
  const auto p = CouplingParams::from_kappa(kappa);
  const double x1 = x[0], x2 = x[1], e = 4.0 / kappa;
  // Real-positive integrand on the segment.
  const double span = x2 - x1;
  const double interval = span * integrate_unit([&](double t, double u) {
    return std::pow(span, 2.0 / kappa) * std::pow(span * t, -e) * std::pow(span * u, -e);
  });

  // Phase gained by (u - c)^{-4/kappa} when u winds once around c, tracked
  // by sampling the circle.
  auto winding = [&](double sign) {
    const int k = 256;
    double acc = 0, prev = 0;
    for (int i = 0; i <= k; ++i) {
      const double t = kPi + sign * 2 * kPi * i / k;
      if (i > 0) acc += wrap_pi(t - prev);
      prev = t;
    }
    return -e * acc;
  };
  const double ccw = winding(+1.0), cw = winding(-1.0);
  // Pass 1 forward; around x2 (ccw) then back; around x1 (ccw) then forward;
  // around x2 (cw) then back.
  const double ph2 = ccw, ph3 = ph2 + ccw, ph4 = ph3 + cw;
  const cplx sum = interval * (1.0 - std::exp(cplx(0, ph2)) + std::exp(cplx(0, ph3)) - std::exp(cplx(0, ph4)));
  const double pc = pochhammer_constant(p);
  return std::abs(std::abs(sum) / interval - pc) / pc;
}

}  // namespace fk

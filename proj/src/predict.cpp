#include "fk/predict.hpp"

#include <cmath>

#include "fk/coulomb.hpp"
#include "fk/errors.hpp"

namespace fk {

double CrossingDistribution::prob(const LinkPattern& a) const {
  for (std::size_t i = 0; i < patterns.size(); ++i)
    if (patterns[i] == a) return probs[i];
  throw ValidationError("pattern not in distribution");
}

double CrossingDistribution::total() const {
  double s = 0;
  for (double p : probs) s += p;
  return s;
}

namespace {

constexpr double kFk = 16.0 / 3.0;

double condition_of(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : INFINITY;
}

std::vector<double> solve_at(int n, const Points& x, const CouplingParams& p, const ZOptions& opt) {
  const auto pats = enumerate_patterns(n);
  const Eigen::MatrixXd m = meander_matrix(n, p.q);
  Eigen::VectorXd g(pats.size());
  const bool closed = opt.source == GSource::automatic && p.kappa == kFk;
  for (std::size_t b = 0; b < pats.size(); ++b)
    g(b) = closed ? f_beta(pats[b], x) : g_beta_numeric(pats[b], x, p, opt.tol);
  const Eigen::VectorXd z = m.partialPivLu().solve(g);
  return {z.data(), z.data() + z.size()};
}

}  // namespace

bool is_exceptional(int n, const CouplingParams& p) {
  return condition_of(meander_matrix(n, p.q)) > 1e10;
}

std::vector<double> z_pure_all(int n, const Points& x, const CouplingParams& p, const ZOptions& opt) {
  check_points(x, n);
  if (!(p.kappa > 4 && p.kappa <= 6)) throw DomainError("z_pure: kappa must lie in (4,6]");
  if (n > 3) throw CapacityError("z_pure: N above 3");
  if (!is_exceptional(n, p)) return solve_at(n, x, p, opt);
  if (!opt.allow_perturbation) throw ExceptionalKappaError("z_pure: meander matrix is singular at this kappa");
  // Symmetric differences in kappa remove odd orders; two Richardson
  // steps remove eps^2 and eps^4.
  ZOptions o = opt;
  o.source = GSource::quadrature;
  const double eps[3] = {1e-2, 5e-3, 2.5e-3};
  std::vector<std::vector<double>> sym;
  for (double e : eps) {
    const auto zp = solve_at(n, x, CouplingParams::from_kappa(p.kappa + e), o);
    const auto zm = solve_at(n, x, CouplingParams::from_kappa(p.kappa - e), o);
    std::vector<double> s(zp.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = 0.5 * (zp[i] + zm[i]);
    sym.push_back(s);
  }
  std::vector<double> out(sym[0].size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double r1 = (4 * sym[1][i] - sym[0][i]) / 3;
    const double r2 = (4 * sym[2][i] - sym[1][i]) / 3;
    out[i] = (16 * r2 - r1) / 15;
  }
  return out;
}

double z_pure(const LinkPattern& alpha, const Points& x, const CouplingParams& p, const ZOptions& opt) {
  const auto all = z_pure_all(alpha.n(), x, p, opt);
  return all[pattern_index(alpha)];
}

double z_nested_closed_form(const Points& x) {
  check_points(x, 2);
  const double chi = cross_ratio(x[0], x[1], x[2], x[3]);
  return std::pow(x[3] - x[0], -0.125) * std::pow(x[2] - x[1], -0.125) * std::pow(chi, 0.375) /
         std::sqrt(1 + std::sqrt(1 - chi));
}

CrossingDistribution crossing_distribution(const LinkPattern& beta, const Points& x, const ZOptions& opt) {
  const int n = beta.n();
  const auto p = CouplingParams::fk_ising();
  const auto z = z_pure_all(n, x, p, opt);
  const double f = f_beta(beta, x);
  CrossingDistribution d;
  d.n = n;
  d.boundary = beta;
  d.patterns = enumerate_patterns(n);
  for (std::size_t a = 0; a < d.patterns.size(); ++a)
    d.probs.push_back(std::pow(std::sqrt(2.0), loop_count(d.patterns[a], beta)) * z[a] / f);
  return d;
}

double crossing_prob(const LinkPattern& alpha, const LinkPattern& beta, const Points& x, const ZOptions& opt) {
  if (alpha.n() != beta.n()) throw DimensionError("crossing_prob: patterns have different N");
  return crossing_distribution(beta, x, opt).prob(alpha);
}

CrossingDistribution reweight_boundary(const CrossingDistribution& from, const LinkPattern& to, double q) {
  if (to.n() != from.n) throw DimensionError("reweight_boundary: N mismatch");
  if (!(q > 0)) throw PreconditionError("reweight_boundary: q must be positive");
  CrossingDistribution out;
  out.n = from.n;
  out.boundary = to;
  out.patterns = from.patterns;
  const double sq = std::sqrt(q);
  double z = 0;
  for (std::size_t a = 0; a < from.patterns.size(); ++a) {
    const int dl = loop_count(from.patterns[a], to) - loop_count(from.patterns[a], from.boundary);
    out.probs.push_back(std::pow(sq, dl) * from.probs[a]);
    z += out.probs.back();
  }
  if (!(z > 0)) throw DegenerateInputError("reweight_boundary: zero normaliser");
  for (auto& v : out.probs) v /= z;
  return out;
}

CrossingDistribution compare_identity(const CrossingDistribution& un, const LinkPattern& beta, double q) {
  if (!(un.boundary == LinkPattern::unnested(un.n)))
    throw PreconditionError("compare_identity: input must have the unnested boundary");
  return reweight_boundary(un, beta, q);
}

}  // namespace fk

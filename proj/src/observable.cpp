#include "fk/observable.hpp"

#include <cmath>
#include <numbers>

#include "fk/errors.hpp"

namespace fk {

namespace {

using cd = std::complex<double>;

// 1 / sqrt(y - x_j) for real y on the boundary, limit from the upper half-plane.
cd inv_sqrt_boundary(double y, double xj) {
  const double d = y - xj;
  return d > 0 ? cd(1.0 / std::sqrt(d), 0) : cd(0, -1.0 / std::sqrt(-d));
}

cd s_ddot(const Points& x, int a, int b, double y) {
  cd v = 1;
  for (int j = 1; j <= static_cast<int>(x.size()); ++j)
    if (j != a && j != b) v *= inv_sqrt_boundary(y, x[j - 1]);
  return v;
}

// U^{+}(r, s) for s = 0..N-1 (sign = +1) or U^{-} (sign = -1).
Eigen::VectorXcd u_row(const LinkPattern& beta, const Points& x, int r, int sign) {
  const int n = beta.n();
  const auto& l = beta.links()[r - 1];
  const double y = x[(sign > 0 ? l[0] : l[1]) - 1];
  const cd sd = s_ddot(x, l[0], l[1], y);
  Eigen::VectorXcd row(n);
  double pw = 1.0;
  for (int s = 0; s < n; ++s) {
    row(s) = pw * sd;
    pw *= y - x[0];
  }
  return row;
}

}  // namespace

LinearSystem build_system(const LinkPattern& beta, const Points& x) {
  const int n = beta.n();
  check_points(x, n);
  LinearSystem sys;
  sys.R.resize(n - 1, n - 1);
  sys.V.resize(n - 1);
  for (int r = 1; r < n; ++r) {
    const Eigen::VectorXcd row = u_row(beta, x, r + 1, +1) + u_row(beta, x, r + 1, -1);
    sys.V(r - 1) = row(0);
    for (int s = 1; s < n; ++s) sys.R(r - 1, s - 1) = row(s);
  }
  if (n > 1) {
    // Row scaling does not change the solution; condition the row-normalised matrix.
    Eigen::MatrixXcd Rn = sys.R;
    for (int r = 0; r < n - 1; ++r) Rn.row(r) /= Rn.row(r).norm();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Rn);
    const auto& sv = svd.singularValues();
    sys.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (sys.condition > 1e12) throw ConditioningError("build_system: R is near singular");
  }
  return sys;
}

double ObservablePoly::eval(double z) const {
  double v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * (z - base[0]) + *it;
  return v;
}

std::complex<double> ObservablePoly::eval(std::complex<double> z) const {
  cd v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * (z - base[0]) + *it;
  return v;
}

ObservablePoly solve_poly(const LinkPattern& beta, const Points& x) {
  const int n = beta.n();
  const auto sys = build_system(beta, x);
  ObservablePoly poly;
  poly.base = x;
  // sqrt(pi) i p_0 S(x_1) = 1, with S(x_1) = prod_{j>1} (-i) / sqrt(x_j - x_1).
  double mag = 1.0;
  for (std::size_t j = 1; j < x.size(); ++j) mag *= std::sqrt(x[j] - x[0]);
  const double p0 = (n % 2 ? 1.0 : -1.0) * mag / std::sqrt(std::numbers::pi);
  poly.coeffs.assign(n, 0.0);
  poly.coeffs[0] = p0;
  if (n > 1) {
    const Eigen::VectorXcd sol = sys.R.partialPivLu().solve(-sys.V);
    for (int s = 1; s < n; ++s) {
      const cd v = sol(s - 1);
      if (std::abs(v.imag()) > 1e-8 * (1.0 + std::abs(v.real())))
        throw InvariantError("solve_poly: coefficients are not real");
      poly.coeffs[s] = p0 * v.real();
    }
  }
  return poly;
}

SpinorValue phi(const ObservablePoly& poly, std::complex<double> z, int sheet) {
  cd s = 1;
  for (double xj : poly.base) {
    if (std::abs(z - xj) == 0.0) throw SingularityError("phi: z is a marked point");
    s /= std::sqrt(z - xj);
  }
  return {cd(0, 1) * poly.eval(z) * s * static_cast<double>(sheet >= 0 ? 1 : -1), sheet >= 0 ? 1 : -1};
}

SpinorValue phi(const LinkPattern& beta, const Points& x, std::complex<double> z, int sheet) {
  return phi(solve_poly(beta, x), z, sheet);
}

double expansion_k(const LinkPattern& beta, const Points& x) {
  const auto poly = solve_poly(beta, x);
  double s = 0;
  for (std::size_t k = 1; k < x.size(); ++k) s += 1.0 / (x[k] - x[0]);
  return (poly.derivative_at_base() / poly.coeffs[0] + 0.5 * s) / std::sqrt(std::numbers::pi);
}

std::vector<double> predicted_jumps(const LinkPattern& beta, const Points& x) {
  const auto poly = solve_poly(beta, x);
  std::vector<double> out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double pk = poly.eval(x[k]);
    double logprod = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != k) logprod -= std::log(std::abs(x[k] - x[j]));
    out.push_back(std::numbers::pi * pk * pk * std::exp(logprod));
  }
  return out;
}

std::complex<double> q_beta(const LinkPattern& beta, const Points& x, const std::vector<int>& sigma) {
  const int n = beta.n();
  check_points(x, n);
  if (static_cast<int>(sigma.size()) != n - 1) throw DimensionError("q_beta: sigma must have N-1 entries");
  if (n == 1) return 1.0;
  Eigen::MatrixXcd m(n - 1, n - 1);
  for (int r = 2; r <= n; ++r) {
    const Eigen::VectorXcd row = u_row(beta, x, r, sigma[r - 2]);
    for (int s = 1; s < n; ++s) m(r - 2, s - 1) = row(s);
  }
  return m.determinant();
}

std::complex<double> q_beta_vandermonde(const LinkPattern& beta, const Points& x, const std::vector<int>& sigma) {
  const int n = beta.n();
  check_points(x, n);
  if (static_cast<int>(sigma.size()) != n - 1) throw DimensionError("q_beta: sigma must have N-1 entries");
  std::vector<double> y(n + 1);
  cd v = 1;
  for (int r = 2; r <= n; ++r) {
    const auto& l = beta.links()[r - 1];
    y[r] = x[(sigma[r - 2] > 0 ? l[0] : l[1]) - 1];
    v *= (y[r] - x[0]) * s_ddot(x, l[0], l[1], y[r]);
  }
  for (int s = 2; s <= n; ++s)
    for (int t = s + 1; t <= n; ++t) v *= y[t] - y[s];
  return v;
}

std::complex<double> nearest_unit_phase(std::complex<double> q) {
  const cd cands[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cd u = q / std::abs(q);
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(u - cands[i]) < std::abs(u - cands[best])) best = i;
  return cands[best];
}

double cramer_ratio(const LinkPattern& beta, const Points& x) {
  const auto sys = build_system(beta, x);
  if (beta.n() < 2) throw PreconditionError("cramer_ratio: needs N >= 2");
  Eigen::MatrixXcd rb = sys.R;
  rb.col(0) = sys.V;
  const cd r = rb.determinant() / sys.R.determinant();
  return r.real();
}

double cramer_weighted_average(const LinkPattern& beta, const Points& x) {
  const int n = beta.n();
  if (n < 2) throw PreconditionError("cramer_weighted_average: needs N >= 2");
  std::vector<int> sigma(n - 1, 1);
  const cd theta = nearest_unit_phase(q_beta(beta, x, sigma));
  double num = 0, den = 0;
  for (int m = 0; m < (1 << (n - 1)); ++m) {
    double inv = 0;
    for (int r = 2; r <= n; ++r) {
      sigma[r - 2] = (m >> (r - 2)) & 1 ? -1 : 1;
      const auto& l = beta.links()[r - 1];
      inv += 1.0 / (x[(sigma[r - 2] > 0 ? l[0] : l[1]) - 1] - x[0]);
    }
    const double g = (q_beta(beta, x, sigma) / theta).real();
    num += g * inv;
    den += g;
  }
  return num / den;
}

}  // namespace fk

#include "fk/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fk/errors.hpp"

namespace fk {

double elliptic_k(double k) {
  if (!(k >= 0 && k < 1)) throw DomainError("elliptic_k: modulus must lie in [0,1)");
  double a = 1.0, b = std::sqrt((1.0 - k) * (1.0 + k));
  for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

double jacobi_sn(double u, double k) {
  if (!(k >= 0 && k < 1)) throw DomainError("jacobi_sn: modulus must lie in [0,1)");
  if (k == 0) return std::sin(u);
  // Descending Landen / AGM scheme.
  double a[40], c[40];
  a[0] = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > 1e-16 && n < 38) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int m = n; m > 0; --m) phi = 0.5 * (phi + std::asin(c[m] / a[m] * std::sin(phi)));
  return std::sin(phi);
}

double jacobi_dn(double u, double k) {
  const double s = jacobi_sn(u, k);
  return std::sqrt(std::max(0.0, 1.0 - k * k * s * s));
}

double rect_modulus(double L, double M) {
  if (!(L > 0 && M > 0)) throw DomainError("rect_modulus: side lengths must be positive");
  const double target = M / L;
  auto ratio = [](double k) { return elliptic_k(std::sqrt((1.0 - k) * (1.0 + k))) / (2.0 * elliptic_k(k)); };
  // ratio decreases from +inf (k -> 0) to 0 (k -> 1).
  double lo = 1e-300, hi = 1.0 - 1e-16;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double rectangle_to_halfplane(double L, double M, double k, double s) {
  const double P = 2.0 * (L + M);
  s = std::fmod(s, P);
  if (s < 0) s += P;
  const double K = elliptic_k(k);
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  const double Kp = elliptic_k(kp);
  const double sx = 2.0 * K / L;  // lattice x-length -> real part
  const double sy = Kp / M;       // lattice y-length -> imaginary part
  if (s <= L) return jacobi_sn(-K + s * sx, k);                    // bottom
  if (s <= L + M) return 1.0 / jacobi_dn((s - L) * sy, kp);        // right
  if (s <= 2 * L + M) {                                            // top
    const double sn = jacobi_sn(K - (s - L - M) * sx, k);
    return sn == 0.0 ? INFINITY : 1.0 / (k * sn);
  }
  return -1.0 / jacobi_dn((P - s) * sy, kp);                       // left
}

Points marked_points_halfplane(const RectangleSpec& rect) {
  const auto& pos = rect.positions;
  const std::size_t m = pos.size();
  if (m < 2 || m % 2) throw PreconditionError("rectangle needs an even number (>= 2) of marked points");
  const double P = 2.0 * (rect.L + rect.M);
  // Offsets from the first point must increase strictly within one turn.
  std::vector<double> off(m);
  for (std::size_t i = 0; i < m; ++i) {
    double o = std::fmod(pos[i] - pos[0], P);
    if (o < 0) o += P;
    off[i] = o;
    if (i > 0 && !(off[i] > off[i - 1])) throw PreconditionError("marked positions are not in counterclockwise order");
  }
  const double k = rect_modulus(rect.L, rect.M);
  Points z(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = rectangle_to_halfplane(rect.L, rect.M, k, pos[i]);
  bool increasing = std::isfinite(z[0]);
  for (std::size_t i = 0; i + 1 < m && increasing; ++i) increasing = std::isfinite(z[i + 1]) && z[i] < z[i + 1];
  if (increasing) return z;
  // Send a boundary point of the last gap to infinity; z -> -1/(z - c)
  // preserves orientation.
  const double gap_mid = pos[0] - 0.5 * (P - off[m - 1]);
  double c = rectangle_to_halfplane(rect.L, rect.M, k, gap_mid);
  if (!std::isfinite(c)) c = rectangle_to_halfplane(rect.L, rect.M, k, gap_mid + 1e-6 * P);
  for (auto& v : z) v = std::isfinite(v) ? -1.0 / (v - c) : 0.0;
  if (m >= 4) {
    // Symmetric form: first three points to (-a, -1, 1), which puts the last
    // at a. Corner-marked rectangles then land on (-1/k, -1, 1, 1/k).
    const double y0 = z[0], y1 = z[1], y2 = z[2], y3 = z[m - 1];
    const double chi = (y1 - y0) * (y3 - y2) / ((y2 - y0) * (y3 - y1));
    const double a = (1 + std::sqrt(chi)) / (1 - std::sqrt(chi));
    // S(v) sends (y0, y1, y2) to (0, 1, inf); solve the same cross ratio for
    // targets (-a, -1, 1).
    const double r = -2.0 / (a - 1.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == 2) {
        z[i] = 1.0;
        continue;
      }
      const double w = (z[i] - y0) * (y1 - y2) / ((z[i] - y2) * (y1 - y0));
      z[i] = (w + a * r) / (w - r);
    }
  }
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (!(z[i] < z[i + 1])) throw InvariantError("marked_points_halfplane: images not increasing");
  return z;
}

}  // namespace fk

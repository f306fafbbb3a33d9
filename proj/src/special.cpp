#include "fk/special.hpp"

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fk/errors.hpp"

namespace fk {

double integrate_unit(const std::function<double(double, double)>& g) {
  boost::math::quadrature::tanh_sinh<double> ts;
  // On (-1,1) the second argument is -(1+z) for z < 0 and 1-z for z > 0.
  auto f = [&](double z, double zc) {
    double t, u;
    if (z < -0.5) {
      t = -0.5 * zc;
      u = 1.0 - t;
    } else if (z > 0.5) {
      u = 0.5 * zc;
      t = 1.0 - u;
    } else {
      t = 0.5 * (1.0 + z);
      u = 0.5 * (1.0 - z);
    }
    return 0.5 * g(t, u);
  };
  return ts.integrate(f, -1.0, 1.0);
}

double hyp2f1(double a, double b, double c, double z) {
  if (!(c > b && b > 0)) throw DomainError("hyp2f1: requires c > b > 0");
  if (!(z <= 0)) throw DomainError("hyp2f1: requires z <= 0");
  if (z == 0) return 1.0;
  const double integral = integrate_unit([&](double t, double u) {
    return std::pow(t, b - 1) * std::pow(u, c - b - 1) * std::pow(1.0 - z * t, -a);
  });
  const double logpre = std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b);
  return std::exp(logpre) * integral;
}

double hge_integral_rhs(double kappa, double lambda, double nu, double mu) {
  if (!(kappa > 4 && lambda > 0 && nu < 1 && mu < 1.0 / lambda))
    throw DomainError("hge_integral_rhs: parameters outside kappa > 4, lambda > 0, nu < 1, mu < 1/lambda");
  const double e = 4.0 / kappa;
  auto term = [&](double upper, double arg) {
    return std::pow(upper, 1.0 - e) * hyp2f1(e, 1.0 - e, 2.0 - e, arg);
  };
  return kappa * std::pow(lambda, -e) / (kappa - 4.0) * (term(nu, -nu / lambda) - term(mu * lambda, -mu));
}

double hyp2f1_asymptotic(double a, double b, double c, double z) {
  const double mz = -z;
  const double t1 = std::tgamma(c) * std::tgamma(b - a) / (std::tgamma(b) * std::tgamma(c - a)) * std::pow(mz, -a);
  const double t2 = std::tgamma(c) * std::tgamma(a - b) / (std::tgamma(a) * std::tgamma(c - b)) * std::pow(mz, -b);
  return t1 + t2;
}

}  // namespace fk

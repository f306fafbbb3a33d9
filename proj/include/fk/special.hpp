#pragma once

#include <functional>

namespace fk {

// Tanh-sinh integral over (0,1) of g(t, 1 - t); both arguments stay accurate
// near their endpoint, so algebraic endpoint singularities are fine.
double integrate_unit(const std::function<double(double, double)>& g);

// Gauss hypergeometric function from its Euler integral; needs c > b > 0, z <= 0.
double hyp2f1(double a, double b, double c, double z);

// Closed form of int_{mu*lambda}^{nu} u^{-4/k} (u+lambda)^{-4/k} du.
double hge_integral_rhs(double kappa, double lambda, double nu, double mu);

// Two-term large-|z| form of 2F1(a,b,c;z) as z -> -infinity (a != b).
double hyp2f1_asymptotic(double a, double b, double c, double z);

}  // namespace fk

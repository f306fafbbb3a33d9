#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fk/linkpat.hpp"
#include "fk/partition.hpp"

namespace fk {

struct LinearSystem {
  Eigen::MatrixXcd R;   // (N-1) x (N-1)
  Eigen::VectorXcd V;   // first-order column, s = 0
  double condition = 1; // 2-norm condition number of R
};

// Rows use principal square roots approached from the upper half-plane.
LinearSystem build_system(const LinkPattern& beta, const Points& x);

struct ObservablePoly {
  Points base;
  std::vector<double> coeffs;  // p_0 .. p_{N-1} in powers of (z - x_1)
  double eval(double z) const;
  std::complex<double> eval(std::complex<double> z) const;
  double derivative_at_base() const { return coeffs.size() > 1 ? coeffs[1] : 0.0; }
};

ObservablePoly solve_poly(const LinkPattern& beta, const Points& x);

struct SpinorValue {
  std::complex<double> value;
  int sheet = +1;  // +1: principal roots; -1: the other sheet
};

SpinorValue phi(const LinkPattern& beta, const Points& x, std::complex<double> z, int sheet = +1);
SpinorValue phi(const ObservablePoly& poly, std::complex<double> z, int sheet = +1);

double expansion_k(const LinkPattern& beta, const Points& x);

// Entry k: limit of pi |z - x_k| |phi(z)|^2 as z -> x_k.
std::vector<double> predicted_jumps(const LinkPattern& beta, const Points& x);

// Determinant of the rows U^{sigma_r}(r), r = 2..N (sigma in {+1,-1}^{N-1}).
std::complex<double> q_beta(const LinkPattern& beta, const Points& x, const std::vector<int>& sigma);
// Same quantity from the product (Vandermonde) formula.
std::complex<double> q_beta_vandermonde(const LinkPattern& beta, const Points& x, const std::vector<int>& sigma);
// Phase in {1, i, -1, -i} closest to q / |q|.
std::complex<double> nearest_unit_phase(std::complex<double> q);

// det(R with first column replaced by V) / det(R).
double cramer_ratio(const LinkPattern& beta, const Points& x);
// Weighted average of sum_r 1 / (y_r - x_1) with weights Q(sigma) / theta.
double cramer_weighted_average(const LinkPattern& beta, const Points& x);

}  // namespace fk

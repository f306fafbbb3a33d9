#pragma once

#include <functional>
#include <vector>

#include "fk/linkpat.hpp"

namespace fk {

using Points = std::vector<double>;

// Rejects odd length, non-increasing input and gaps below 1e-12.
void check_points(const Points& x);
void check_points(const Points& x, int n_links);

struct CouplingParams {
  double kappa = 16.0 / 3.0;
  double q = 2.0;
  double h = 1.0 / 16.0;
  double norm_const = 0.0;

  static CouplingParams from_kappa(double kappa);
  static CouplingParams fk_ising() { return from_kappa(16.0 / 3.0); }
};

// Ordered cross-ratio; throws unless y1 < y2 < y3 < y4.
double cross_ratio(double y1, double y2, double y3, double y4);
// |y2-y1||y4-y3| / (|y3-y1||y4-y2|) without the ordering requirement.
double cross_ratio_abs(double y1, double y2, double y3, double y4);

double f_beta(const LinkPattern& beta, const Points& x);
double log_f_beta(const LinkPattern& beta, const Points& x);

struct MobiusMap {
  double a = 1, b = 0, c = 0, d = 1;
  static MobiusMap make(double a, double b, double c, double d);
  double operator()(double z) const { return (a * z + b) / (c * z + d); }
  double derivative(double z) const;
};

double f_beta_polygon(const LinkPattern& beta, const Points& x, const MobiusMap& phi);

double bound_b(const LinkPattern& alpha, const Points& x);
double y_unnested(int n, const Points& x);

using Evaluator = std::function<double(const Points&)>;

// Central-difference BPZ operator at point j (1-based) with absolute step.
double bpz_residual(const Evaluator& f, const Points& x, int j, const CouplingParams& p, double step);
// Default step: 1e-3 times the minimal gap of x.
double default_step(const Points& x);

// Places x_j, x_{j+1} at xi -/+ d/2 and returns f(x) * d^{2h}.
double asy_ratio(const Evaluator& f, const LinkPattern& beta, Points x, int j, double xi, double d,
                 const CouplingParams& p);
double asy_ratio(const Evaluator& f, const LinkPattern& beta, Points x, int j, double d,
                 const CouplingParams& p);

struct AsyTarget {
  LinkPattern reduced;  // beta/{j,j+1} or the tied pattern with {j,j+1} removed
  double factor;        // sqrt(q) when {j,j+1} is a link, else 1
};
AsyTarget asy_target(const LinkPattern& beta, int j, const CouplingParams& p);
Points drop_pair(const Points& x, int j);

}  // namespace fk

#pragma once

#include <array>
#include <complex>
#include <vector>

#include "fk/linkpat.hpp"
#include "fk/partition.hpp"

namespace fk {

using cplx = std::complex<double>;

struct ContourPolicy {
  double kappa = 16.0 / 3.0;     // sets the endpoint substitution exponent
  double height_factor = 0.15;   // height = factor * span * (1 + depth)
  double panel_tol = 1e-12;      // relative Gauss-Kronrod target per contour
  int max_panels = 4000;
};

// Semi-ellipse u(theta) = c - R cos(theta) + i H sin(theta), theta = pi B(s),
// B(s) = s^m / (s^m + (1-s)^m). Nodes and weights are in the s variable.
struct Contour {
  int a = 0, b = 0;  // marked indices of the link (1-based)
  double start = 0, end = 0, height = 0;
  int depth = 0;  // nesting height: 0 for innermost links
  std::vector<std::array<double, 2>> panels;
  std::vector<double> s;
  std::vector<cplx> nodes;
  std::vector<cplx> weights;  // quadrature weight * du/ds * single-point factors
};

std::vector<int> nesting_depths(const LinkPattern& beta);
std::vector<Contour> build_contours(const LinkPattern& beta, const Points& x, const ContourPolicy& policy = {});

// Phases of every factor measured from the base configuration, where all
// u_r are real with x_{a_r} < u_r < x_{a_r + 1} and the integrand is real
// positive.
struct BranchState {
  LinkPattern beta;
  std::vector<cplx> u;
  std::vector<double> single_phase;  // [r * 2N + i]: arg of (u_r - x_i)
  std::vector<double> pair_phase;    // [r * N + s], r < s: arg of (u_s - u_r)
};

// Branch at a base configuration (u real inside the base intervals).
BranchState base_branch(const LinkPattern& beta, const Points& x, const std::vector<cplx>& u);
// Moves the state to u_next; throws QuadratureError if a phase jumps by pi/2 or more.
void continue_branch(BranchState& st, const Points& x, const std::vector<cplx>& u_next);
// Closed-form branch for u in the closed upper half-plane below the contours
// of enclosing links (the region swept by build_contours).
BranchState contour_branch(const LinkPattern& beta, const Points& x, const std::vector<cplx>& u);

cplx integrand_f(const Points& x, const std::vector<cplx>& u, const CouplingParams& p, const BranchState& branch);

struct GResult {
  double value = 0;
  double imag_rel = 0;   // |Im| / |G|
  double change = 0;     // relative change under the last panel bisection
  std::size_t nodes = 0; // nodes per contour in the accepted grid (max)
};

GResult g_beta_detailed(const LinkPattern& beta, const Points& x, const CouplingParams& p, double tol = 1e-10);
double g_beta_numeric(const LinkPattern& beta, const Points& x, const CouplingParams& p, double tol = 1e-10);

double pochhammer_constant(const CouplingParams& p);
// N = 1: four passes of a Pochhammer loop with phases continued around the
// endpoints, compared with the interval integral. Returns the relative
// deviation of |sum| / |interval| from pochhammer_constant.
double h_vs_hcirc_check(const Points& x, double kappa);

}  // namespace fk

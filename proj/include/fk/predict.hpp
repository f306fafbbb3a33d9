#pragma once

#include <map>
#include <vector>

#include "fk/linkpat.hpp"
#include "fk/partition.hpp"

namespace fk {

struct CrossingDistribution {
  int n = 0;
  LinkPattern boundary;
  std::vector<LinkPattern> patterns;  // canonical order
  std::vector<double> probs;          // raw values
  std::vector<double> stderrs;        // empty for theory and enumeration
  double ess = 0;                     // effective sample size (Monte Carlo only)
  double prob(const LinkPattern& a) const;
  double total() const;
};

enum class GSource {
  automatic,    // closed-form F at kappa = 16/3, quadrature otherwise
  quadrature,   // always g_beta_numeric
};

struct ZOptions {
  GSource source = GSource::automatic;
  bool allow_perturbation = true;
  double tol = 1e-12;
};

// All pure partition functions Z_alpha at x in canonical order.
std::vector<double> z_pure_all(int n, const Points& x, const CouplingParams& p, const ZOptions& opt = {});
double z_pure(const LinkPattern& alpha, const Points& x, const CouplingParams& p, const ZOptions& opt = {});
bool is_exceptional(int n, const CouplingParams& p);

// Closed form for the nested pattern, N = 2, kappa = 16/3.
double z_nested_closed_form(const Points& x);

double crossing_prob(const LinkPattern& alpha, const LinkPattern& beta, const Points& x, const ZOptions& opt = {});
CrossingDistribution crossing_distribution(const LinkPattern& beta, const Points& x, const ZOptions& opt = {});

// P_to[a] proportional to (M_{a,to}(q) / M_{a,from}(q)) P_from[a].
CrossingDistribution reweight_boundary(const CrossingDistribution& from, const LinkPattern& to, double q);
CrossingDistribution compare_identity(const CrossingDistribution& unnested, const LinkPattern& beta, double q);

}  // namespace fk

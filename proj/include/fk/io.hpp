#pragma once

#include <string>
#include <vector>

#include "fk/conformal.hpp"
#include "fk/predict.hpp"
#include "fk/rcm.hpp"

namespace fk::io {

// Rounds to 12 significant digits, the precision of all text output.
double round12(double x);
std::string fmt(double x);

// "0, 1.5, 3" -> increasing points.
Points parse_points(const std::string& text);
std::vector<int> parse_ints(const std::string& text);
// "L,M:p1,p2,..." -> rectangle with perimeter positions.
RectangleSpec parse_rect(const std::string& text);

enum class Provenance { theory, enumeration, monte_carlo };
std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

std::string distribution_json(const CrossingDistribution& d, Provenance p);
std::string distribution_csv(const CrossingDistribution& d, Provenance p);
CrossingDistribution parse_distribution_json(const std::string& text, Provenance* p = nullptr);
CrossingDistribution parse_distribution_csv(const std::string& text, Provenance* p = nullptr);

// Lattice run configuration.
struct RunConfig {
  int width = 4, height = 3;
  double mesh = 1.0;
  std::vector<int> marked;  // boundary offsets; empty: corners
  std::string beta = "1-2,3-4";
  double q = 2.0;
  double p = -1;  // < 0: critical for q
  long sweeps = 100000;
  long burn_in = -1;
  int chains = 1;
  std::uint64_t seed = 1;
  double tol = 0.03;
  bool operator==(const RunConfig&) const = default;
};

std::string config_json(const RunConfig& c);
RunConfig parse_config_json(const std::string& text);
LatticePolygon polygon_of(const RunConfig& c);
double p_of(const RunConfig& c);

// Perimeter positions of the lattice marked points on the effective
// rectangle L = W, M = H + 1.
RectangleSpec effective_rectangle(const LatticePolygon& poly);

struct CompareEntry {
  std::string pattern;
  double theory = 0, enumeration = 0, monte_carlo = 0, stderr_mc = 0;
  bool has_theory = false, has_enumeration = false;
  bool pass = true;
};

struct RunReport {
  std::string command;
  RunConfig config;
  std::vector<CompareEntry> entries;
  bool pass = true;
};

RunReport compare_run(const RunConfig& c, const std::string& command);
std::string report_json(const RunReport& r);

}  // namespace fk::io

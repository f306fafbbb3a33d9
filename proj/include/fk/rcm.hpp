#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "fk/linkpat.hpp"
#include "fk/predict.hpp"

namespace fk {

// Directions on the square lattice, counterclockwise.
enum Dir : int { kEast = 0, kNorth = 1, kWest = 2, kSouth = 3 };

// Grid vertices (i, j), 0 <= i <= width, 0 <= j <= height. The boundary
// cycle runs counterclockwise from (0,0): bottom row, right column, top row,
// left column. Wired arcs run from x_{2r-1} to x_{2r} inclusive.
struct LatticePolygon {
  int width = 0, height = 0;
  double mesh = 1.0;
  std::vector<int> boundary;  // vertex ids, counterclockwise
  std::vector<int> marked;    // offsets into boundary, x_1 first
  std::vector<int> arc_of;    // per vertex: wired arc 0..N-1, or -1
  std::vector<int> node_of;   // per vertex: node of the arc-contracted graph
  int n_nodes = 0;            // arcs are nodes 0..N-1
  std::vector<std::array<int, 2>> edges;       // random edges (vertex ids)
  std::vector<std::array<int, 2>> edge_nodes;  // their endpoints as nodes
  // Per vertex and direction: edge index, kOutside or kArcEdge.
  std::vector<std::array<int, 4>> nbr;

  static constexpr int kOutside = -1;
  static constexpr int kArcEdge = -2;

  int n() const { return static_cast<int>(marked.size()) / 2; }
  int vertex(int i, int j) const { return j * (width + 1) + i; }
  int col(int v) const { return v % (width + 1); }
  int row(int v) const { return v / (width + 1); }
  int step(int v, int d) const;
  int marked_vertex(int k) const { return boundary[marked[k - 1]]; }  // k is 1-based
};

LatticePolygon build_polygon(int width, int height, const std::vector<int>& marked, double mesh = 1.0);
// width n, height n-1 (self-dual for free top/bottom and wired sides),
// marked at the corners (0,H), (0,0), (W,0), (W,H).
LatticePolygon corner_square(int n);
// Boundary offset of vertex (i, j) on the boundary cycle.
int boundary_offset(int width, int height, int i, int j);

struct BondConfig {
  std::vector<std::uint8_t> open;
  std::uint64_t generation = 0;
};

// Internal partition of the wired arcs (no external wiring).
NonCrossingPartition internal_partition(const BondConfig& c, const LatticePolygon& poly);
LinkPattern connectivity_pattern(const BondConfig& c, const LatticePolygon& poly, const LinkPattern& beta);

// Integer counts of configurations by (internal pattern, clusters, open edges).
struct EnumerationTable {
  int n = 0;
  int n_edges = 0;
  int n_nodes = 0;
  // counts[pattern][clusters][open]
  std::vector<std::vector<std::vector<std::uint64_t>>> counts;
};

inline constexpr int kMaxEnumEdges = 24;
EnumerationTable enumerate_configs(const LatticePolygon& poly, int threads = 0);
CrossingDistribution exact_distribution(const EnumerationTable& t, const LinkPattern& beta, double q, double p);
CrossingDistribution exact_distribution(const LatticePolygon& poly, const LinkPattern& beta, double q, double p);

double critical_p(double q);

struct SamplerOptions {
  double p = -1;             // < 0: critical value for q = 2
  bool glauber = false;      // single-edge heat bath instead of Swendsen-Wang
};

class SwSampler {
 public:
  SwSampler(const LatticePolygon& poly, const LinkPattern& beta, std::uint64_t seed, SamplerOptions opt = {});
  void sweep();
  const BondConfig& config() const { return config_; }
  int pattern_index() const;  // of connectivity_pattern in canonical order
  LinkPattern pattern() const;

 private:
  void sweep_sw();
  void sweep_glauber();
  const LatticePolygon& poly_;
  LinkPattern beta_;
  double p_;
  bool glauber_;
  std::mt19937_64 rng_;
  BondConfig config_;
  std::vector<int> block_of_arc_;
  std::vector<int> parent_;
  std::uint64_t p_threshold_;
  mutable std::map<std::vector<int>, int> index_cache_;
};

using SampleCallback = std::function<void(const BondConfig&, int pattern_index)>;

// Runs burn_in sweeps (burn_in < 0: automatic, at least 1000) then calls back
// after each of `sweeps` sweeps. Deterministic in seed.
void sw_sample(const LatticePolygon& poly, const LinkPattern& beta, long sweeps, long burn_in, std::uint64_t seed,
               const SampleCallback& cb, SamplerOptions opt = {});
std::vector<int> sw_stream(const LatticePolygon& poly, const LinkPattern& beta, long sweeps, long burn_in,
                           std::uint64_t seed, SamplerOptions opt = {});

double integrated_autocorrelation(const std::vector<double>& series);

// Frequencies with autocorrelation-adjusted standard errors. Each inner
// vector is one chain of pattern indices.
CrossingDistribution estimate_probs(const std::vector<std::vector<int>>& chains, const LinkPattern& boundary,
                                    std::size_t max_samples = SIZE_MAX);
CrossingDistribution estimate_probs(const std::vector<int>& stream, const LinkPattern& boundary,
                                    std::size_t max_samples = SIZE_MAX);

struct ChainPlan {
  long sweeps = 10000;  // per chain, after burn-in
  long burn_in = -1;
  int chains = 1;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: FK_THREADS or hardware concurrency
};

std::uint64_t chain_seed(std::uint64_t seed, int chain);
int default_threads();
// One pattern-index stream per chain; chains run on independent threads.
std::vector<std::vector<int>> run_chains(const LatticePolygon& poly, const LinkPattern& beta, const ChainPlan& plan,
                                         SamplerOptions opt = {});

struct MedialPath {
  int start = 0, end = 0;  // 1-based marked indices, start odd
  std::vector<std::array<int, 2>> states;  // (vertex, direction) medial steps
};

std::vector<MedialPath> trace_interfaces(const BondConfig& c, const LatticePolygon& poly);
LinkPattern interface_pairing(const std::vector<MedialPath>& paths, int n);

struct ExplorationTrace {
  std::vector<std::array<int, 2>> medial;
  std::vector<int> corners;  // outer corners in visiting order
  std::vector<bool> visited; // 1-based
  int terminal = 0;
};

ExplorationTrace exploration_path(const BondConfig& c, const LatticePolygon& poly, const LinkPattern& beta);

}  // namespace fk

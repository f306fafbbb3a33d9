#include "fk/rcm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <atomic>
#include <numeric>
#include <thread>

#include "fk/errors.hpp"

namespace fk {

int LatticePolygon::step(int v, int d) const {
  const int i = col(v), j = row(v);
  switch (d) {
    case kEast: return i < width ? v + 1 : -1;
    case kNorth: return j < height ? v + width + 1 : -1;
    case kWest: return i > 0 ? v - 1 : -1;
    default: return j > 0 ? v - width - 1 : -1;
  }
}

int boundary_offset(int W, int H, int i, int j) {
  if (j == 0) return i;
  if (i == W) return W + j;
  if (j == H) return W + H + (W - i);
  if (i == 0) return 2 * W + H + (H - j);
  throw ValidationError("boundary_offset: vertex is not on the boundary");
}

LatticePolygon build_polygon(int width, int height, const std::vector<int>& marked, double mesh) {
  if (width < 1 || height < 1) throw ValidationError("build_polygon: width and height must be positive");
  if (marked.size() < 2 || marked.size() % 2) throw ValidationError("build_polygon: need an even number of marked points");
  if (static_cast<int>(marked.size()) > 2 * kMaxLinks) throw CapacityError("build_polygon: too many marked points");
  if (!(mesh > 0)) throw ValidationError("build_polygon: mesh must be positive");
  LatticePolygon P;
  P.width = width;
  P.height = height;
  P.mesh = mesh;
  const int B = 2 * (width + height);
  for (int i = 0; i <= width; ++i) P.boundary.push_back(P.vertex(i, 0));
  for (int j = 1; j <= height; ++j) P.boundary.push_back(P.vertex(width, j));
  for (int i = width - 1; i >= 0; --i) P.boundary.push_back(P.vertex(i, height));
  for (int j = height - 1; j >= 1; --j) P.boundary.push_back(P.vertex(0, j));
  int prev = -1;
  for (int m : marked) {
    if (m < 0 || m >= B) throw ValidationError("build_polygon: marked offset outside the boundary cycle");
    const int off = ((m - marked[0]) % B + B) % B;
    if (prev >= 0 && off <= prev) throw ValidationError("build_polygon: marked points coincide or are not in counterclockwise order");
    prev = off;
  }
  P.marked = marked;
  const int nv = (width + 1) * (height + 1);
  const int n = P.n();
  P.arc_of.assign(nv, -1);
  for (int r = 0; r < n; ++r) {
    int o = marked[2 * r];
    while (true) {
      P.arc_of[P.boundary[o]] = r;
      if (o == marked[2 * r + 1]) break;
      o = (o + 1) % B;
    }
  }
  P.node_of.assign(nv, -1);
  int next = n;
  for (int v = 0; v < nv; ++v) P.node_of[v] = P.arc_of[v] >= 0 ? P.arc_of[v] : next++;
  P.n_nodes = next;
  P.nbr.assign(nv, {LatticePolygon::kOutside, LatticePolygon::kOutside, LatticePolygon::kOutside,
                    LatticePolygon::kOutside});
  for (int v = 0; v < nv; ++v)
    for (int d : {kEast, kNorth}) {
      const int w = P.step(v, d);
      if (w < 0) continue;
      int code;
      if (P.arc_of[v] >= 0 && P.arc_of[v] == P.arc_of[w]) {
        code = LatticePolygon::kArcEdge;
      } else {
        code = static_cast<int>(P.edges.size());
        P.edges.push_back({v, w});
        P.edge_nodes.push_back({P.node_of[v], P.node_of[w]});
      }
      P.nbr[v][d] = code;
      P.nbr[w][(d + 2) % 4] = code;
    }
  return P;
}

LatticePolygon corner_square(int n) {
  const int W = n, H = n - 1;
  if (H < 1) throw ValidationError("corner_square: n must be at least 2");
  return build_polygon(W, H,
                       {boundary_offset(W, H, 0, H), boundary_offset(W, H, 0, 0), boundary_offset(W, H, W, 0),
                        boundary_offset(W, H, W, H)});
}

namespace {

int find(std::vector<int>& p, int a) {
  while (p[a] != a) a = p[a] = p[p[a]];
  return a;
}

}  // namespace

NonCrossingPartition internal_partition(const BondConfig& c, const LatticePolygon& poly) {
  if (c.open.size() != poly.edges.size()) throw ValidationError("bond configuration size mismatch");
  std::vector<int> par(poly.n_nodes);
  std::iota(par.begin(), par.end(), 0);
  for (std::size_t e = 0; e < poly.edges.size(); ++e)
    if (c.open[e]) par[find(par, poly.edge_nodes[e][0])] = find(par, poly.edge_nodes[e][1]);
  std::map<int, std::vector<int>> groups;
  for (int r = 0; r < poly.n(); ++r) groups[find(par, r)].push_back(r + 1);
  std::vector<std::vector<int>> blocks;
  for (auto& [k, g] : groups) blocks.push_back(g);
  try {
    return NonCrossingPartition::make(poly.n(), blocks);
  } catch (const ValidationError&) {
    throw InvariantError("internal partition is crossing");
  }
}

LinkPattern connectivity_pattern(const BondConfig& c, const LatticePolygon& poly, const LinkPattern& beta) {
  if (beta.n() != poly.n()) throw DimensionError("connectivity_pattern: N mismatch");
  return partition_to_pattern(internal_partition(c, poly));
}

namespace {

// Restricted-growth labels of the arcs' roots, packed 4 bits per arc.
std::uint64_t arc_key(const int8_t* par, int n_arcs) {
  int8_t root_label[64];
  std::memset(root_label, -1, sizeof(root_label));
  std::uint64_t key = 0;
  int next = 0;
  for (int r = 0; r < n_arcs; ++r) {
    int a = r;
    while (par[a] != a) a = par[a];
    if (root_label[a] < 0) root_label[a] = static_cast<int8_t>(next++);
    key |= static_cast<std::uint64_t>(root_label[a]) << (4 * r);
  }
  return key;
}

NonCrossingPartition partition_from_key(std::uint64_t key, int n) {
  std::map<int, std::vector<int>> g;
  for (int r = 0; r < n; ++r) g[(key >> (4 * r)) & 15].push_back(r + 1);
  std::vector<std::vector<int>> blocks;
  for (auto& [k, v] : g) blocks.push_back(v);
  return NonCrossingPartition::make(n, blocks);
}

struct Enumerator {
  const LatticePolygon& P;
  int E, N, V;
  // key -> counts[k][o]
  std::map<std::uint64_t, std::vector<std::vector<std::uint64_t>>> acc;

  void leaf(const int8_t* par, int merges, int open) {
    auto& t = acc[arc_key(par, N)];
    if (t.empty()) t.assign(V + 1, std::vector<std::uint64_t>(E + 1, 0));
    ++t[V - merges][open];
  }

  void rec(int e, const int8_t* par, int merges, int open) {
    if (e == E) {
      leaf(par, merges, open);
      return;
    }
    rec(e + 1, par, merges, open);
    int8_t q[64];
    std::memcpy(q, par, V);
    int a = P.edge_nodes[e][0], b = P.edge_nodes[e][1];
    while (q[a] != a) a = q[a];
    while (q[b] != b) b = q[b];
    int m = merges;
    if (a != b) {
      q[a] = static_cast<int8_t>(b);
      ++m;
    }
    rec(e + 1, q, m, open + 1);
  }
};

}  // namespace

EnumerationTable enumerate_configs(const LatticePolygon& poly, int threads) {
  const int E = static_cast<int>(poly.edges.size());
  if (E > kMaxEnumEdges) throw CapacityError("exact enumeration: more than 24 interior edges");
  if (poly.n_nodes > 64) throw CapacityError("exact enumeration: too many vertices");
  const int N = poly.n(), V = poly.n_nodes;
  if (threads <= 0) threads = default_threads();
  // Split on the first few edges; each prefix is an independent task.
  const int split = std::min(E, threads > 1 ? 4 : 0);
  const int tasks = 1 << split;
  std::vector<Enumerator> parts(tasks, Enumerator{poly, E, N, V, {}});
  auto run = [&](int t) {
    int8_t par[64];
    for (int i = 0; i < V; ++i) par[i] = static_cast<int8_t>(i);
    int merges = 0, open = 0;
    for (int e = 0; e < split; ++e) {
      if (!((t >> e) & 1)) continue;
      ++open;
      int a = poly.edge_nodes[e][0], b = poly.edge_nodes[e][1];
      while (par[a] != a) a = par[a];
      while (par[b] != b) b = par[b];
      if (a != b) {
        par[a] = static_cast<int8_t>(b);
        ++merges;
      }
    }
    parts[t].rec(split, par, merges, open);
  };
  if (tasks == 1) {
    run(0);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(threads, tasks); ++w)
      pool.emplace_back([&] {
        for (int t; (t = next++) < tasks;) run(t);
      });
    for (auto& th : pool) th.join();
  }
  EnumerationTable T;
  T.n = N;
  T.n_edges = E;
  T.n_nodes = V;
  const auto pats = enumerate_patterns(N);
  T.counts.assign(pats.size(), std::vector<std::vector<std::uint64_t>>(V + 1, std::vector<std::uint64_t>(E + 1, 0)));
  for (const auto& part : parts)
    for (const auto& [key, t] : part.acc) {
      const int idx = pattern_index(partition_to_pattern(partition_from_key(key, N)));
      for (int k = 0; k <= V; ++k)
        for (int o = 0; o <= E; ++o) T.counts[idx][k][o] += t[k][o];
    }
  return T;
}

CrossingDistribution exact_distribution(const EnumerationTable& T, const LinkPattern& beta, double q, double p) {
  if (beta.n() != T.n) throw DimensionError("exact_distribution: N mismatch");
  if (!(q > 0)) throw PreconditionError("exact_distribution: q must be positive");
  if (!(p >= 0 && p <= 1)) throw PreconditionError("exact_distribution: p must lie in [0,1]");
  const auto pats = enumerate_patterns(T.n);
  const auto pib = pattern_to_partition(beta);
  CrossingDistribution d;
  d.n = T.n;
  d.boundary = beta;
  d.patterns = pats;
  std::vector<long double> bern(T.n_edges + 1);
  for (int o = 0; o <= T.n_edges; ++o)
    bern[o] = std::pow(static_cast<long double>(p), o) * std::pow(1.0L - p, T.n_edges - o);
  long double total = 0;
  std::vector<long double> w(pats.size(), 0);
  for (std::size_t a = 0; a < pats.size(); ++a) {
    const auto theta = pattern_to_partition(pats[a]);
    const int extra = join_blocks(theta, pib) - theta.n_blocks();
    for (int k = 0; k <= T.n_nodes; ++k) {
      long double s = 0;
      for (int o = 0; o <= T.n_edges; ++o)
        if (T.counts[a][k][o]) s += static_cast<long double>(T.counts[a][k][o]) * bern[o];
      if (s != 0) w[a] += s * std::pow(static_cast<long double>(q), k + extra);
    }
    total += w[a];
  }
  for (auto v : w) d.probs.push_back(static_cast<double>(v / total));
  return d;
}

CrossingDistribution exact_distribution(const LatticePolygon& poly, const LinkPattern& beta, double q, double p) {
  return exact_distribution(enumerate_configs(poly), beta, q, p);
}

double critical_p(double q) {
  if (!(q > 0)) throw PreconditionError("critical_p: q must be positive");
  return std::sqrt(q) / (1 + std::sqrt(q));
}

}  // namespace fk

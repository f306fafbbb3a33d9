#include <algorithm>
#include <set>

#include "fk/errors.hpp"
#include "fk/rcm.hpp"

namespace fk {

namespace {

int ccw(int d) { return (d + 1) & 3; }
int cw(int d) { return (d + 3) & 3; }

// Direction from boundary vertex a to its counterclockwise successor.
int dir_to_next(const LatticePolygon& P, int offset) {
  const int B = static_cast<int>(P.boundary.size());
  const int a = P.boundary[offset], b = P.boundary[(offset + 1) % B];
  for (int d = 0; d < 4; ++d)
    if (P.step(a, d) == b) return d;
  throw InvariantError("boundary cycle is not a lattice path");
}

// Walks the hull of the cluster of wired arc r, testing edges
// counterclockwise around each vertex, until an outward edge is met at a
// wired vertex.
MedialPath trace_from(const BondConfig& c, const LatticePolygon& P, int r) {
  const int k_even = 2 * r + 2;
  int v = P.marked_vertex(k_even);
  int d = dir_to_next(P, P.marked[k_even - 1]);
  MedialPath path;
  const std::size_t limit = 16 * P.nbr.size() + 16;
  while (true) {
    if (path.states.size() > limit) throw InvariantError("interface trace does not terminate");
    path.states.push_back({v, d});
    const int code = P.nbr[v][d];
    if (code == LatticePolygon::kOutside) {
      if (P.arc_of[v] >= 0) break;
      d = ccw(d);
    } else if (code == LatticePolygon::kArcEdge || c.open[code]) {
      v = P.step(v, d);
      d = cw(d);
    } else {
      d = ccw(d);
    }
  }
  const int s = P.arc_of[v];
  const int k_odd = 2 * s + 1;
  if (P.marked_vertex(k_odd) != v) throw InvariantError("interface ends away from a marked point");
  path.start = k_odd;
  path.end = k_even;
  std::reverse(path.states.begin(), path.states.end());
  return path;
}

}  // namespace

std::vector<MedialPath> trace_interfaces(const BondConfig& c, const LatticePolygon& poly) {
  if (c.open.size() != poly.edges.size()) throw ValidationError("bond configuration size mismatch");
  std::vector<MedialPath> out;
  std::set<int> starts;
  for (int r = 0; r < poly.n(); ++r) {
    out.push_back(trace_from(c, poly, r));
    if (!starts.insert(out.back().start).second) throw InvariantError("two interfaces share an endpoint");
  }
  return out;
}

LinkPattern interface_pairing(const std::vector<MedialPath>& paths, int n) {
  if (static_cast<int>(paths.size()) != n) throw DimensionError("interface_pairing: need one path per link");
  std::vector<std::array<int, 2>> links;
  for (const auto& p : paths) links.push_back({p.start, p.end});
  try {
    return LinkPattern::from_pairs(links);
  } catch (const ValidationError&) {
    throw InvariantError("interfaces do not form a planar pairing");
  }
}

ExplorationTrace exploration_path(const BondConfig& c, const LatticePolygon& poly, const LinkPattern& beta) {
  const int n = poly.n();
  if (beta.n() != n) throw DimensionError("exploration_path: N mismatch");
  const auto paths = trace_interfaces(c, poly);
  std::vector<const MedialPath*> by_end(2 * n + 1, nullptr);
  for (const auto& p : paths) {
    by_end[p.start] = &p;
    by_end[p.end] = &p;
  }
  ExplorationTrace t;
  t.visited.assign(2 * n + 1, false);
  const int target = beta.partner(1);
  int k = 1;
  for (int guard = 0; guard <= n; ++guard) {
    const MedialPath& p = *by_end[k];
    const bool forward = p.start == k;
    const int e = forward ? p.end : p.start;
    t.corners.push_back(k);
    t.visited[k] = true;
    if (forward)
      t.medial.insert(t.medial.end(), p.states.begin(), p.states.end());
    else
      t.medial.insert(t.medial.end(), p.states.rbegin(), p.states.rend());
    t.corners.push_back(e);
    t.visited[e] = true;
    if (e == target) {
      t.terminal = e;
      return t;
    }
    k = beta.partner(e);
  }
  throw InvariantError("exploration path does not close");
}

}  // namespace fk

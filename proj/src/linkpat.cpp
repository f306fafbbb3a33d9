#include "fk/linkpat.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "fk/errors.hpp"

namespace fk {

namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

LinkPattern LinkPattern::from_pairs(std::vector<std::array<int, 2>> pairs) {
  const int n = static_cast<int>(pairs.size());
  if (n > kMaxLinks) throw CapacityError("link pattern exceeds " + std::to_string(kMaxLinks) + " links");
  LinkPattern p;
  p.partner_.assign(2 * n + 1, 0);
  for (auto& pr : pairs) {
    if (pr[0] > pr[1]) std::swap(pr[0], pr[1]);
    if (pr[0] < 1 || pr[1] > 2 * n || pr[0] == pr[1])
      throw ValidationError("link endpoint out of range 1.." + std::to_string(2 * n));
    for (int e : pr) {
      if (p.partner_[e] != 0) throw ValidationError("index " + std::to_string(e) + " used twice");
    }
    p.partner_[pr[0]] = pr[1];
    p.partner_[pr[1]] = pr[0];
  }
  std::sort(pairs.begin(), pairs.end());
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s)
      if (pairs[r][0] < pairs[s][0] && pairs[s][0] < pairs[r][1] && pairs[r][1] < pairs[s][1])
        throw ValidationError("link pattern is not planar");
  p.links_ = std::move(pairs);
  return p;
}

LinkPattern LinkPattern::unnested(int n) {
  std::vector<std::array<int, 2>> v;
  for (int r = 1; r <= n; ++r) v.push_back({2 * r - 1, 2 * r});
  return from_pairs(v);
}

LinkPattern LinkPattern::rainbow(int n) {
  std::vector<std::array<int, 2>> v;
  for (int r = 1; r <= n; ++r) v.push_back({r, 2 * n + 1 - r});
  return from_pairs(v);
}

bool LinkPattern::has_link(int i, int j) const {
  return i >= 1 && i <= points() && partner_[i] == j;
}

bool LinkPattern::operator<(const LinkPattern& o) const {
  if (n() != o.n()) return n() < o.n();
  for (int r = 0; r < n(); ++r)
    if (links_[r][1] != o.links_[r][1]) return links_[r][1] < o.links_[r][1];
  return false;
}

std::string LinkPattern::to_string() const {
  std::string s;
  for (const auto& l : links_) {
    if (!s.empty()) s += ',';
    s += std::to_string(l[0]) + '-' + std::to_string(l[1]);
  }
  return s;
}

std::string LinkPattern::to_nested() const {
  const bool wide = points() >= 10;
  std::string s;
  for (int i = 1; i <= points(); ++i) {
    const bool open = partner_[i] > i;
    if (open) s += '(';
    if (wide && !s.empty() && s.back() != '(') s += ' ';
    s += std::to_string(i);
    if (!open) s += ')';
  }
  return s;
}

std::size_t catalan(int n) {
  std::size_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::vector<LinkPattern> enumerate_patterns(int n) {
  if (n < 0) throw PreconditionError("negative number of links");
  if (n > kMaxLinks) throw CapacityError("enumerate_patterns: N above cap " + std::to_string(kMaxLinks));
  std::vector<LinkPattern> out;
  std::vector<std::array<int, 2>> cur;
  // Lowest unmatched point i pairs with j; the points strictly between form
  // a planar sub-pattern, so j - i is odd.
  std::vector<int> partner(2 * n + 2, 0);
  std::function<void()> rec = [&]() {
    int i = 1;
    while (i <= 2 * n && partner[i]) ++i;
    if (i > 2 * n) {
      out.push_back(LinkPattern::from_pairs(cur));
      return;
    }
    for (int j = i + 1; j <= 2 * n; ++j) {
      if (partner[j]) break;
      int inside = 0;
      for (int k = i + 1; k < j; ++k) inside += partner[k] == 0;
      if (inside % 2) continue;
      partner[i] = j;
      partner[j] = i;
      cur.push_back({i, j});
      rec();
      cur.pop_back();
      partner[i] = partner[j] = 0;
    }
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

int pattern_index(const LinkPattern& p) {
  const auto all = enumerate_patterns(p.n());
  auto it = std::lower_bound(all.begin(), all.end(), p);
  if (it == all.end() || !(*it == p)) throw ValidationError("pattern not found in enumeration");
  return static_cast<int>(it - all.begin());
}

int loop_count(const LinkPattern& alpha, const LinkPattern& beta) {
  if (alpha.n() != beta.n()) throw DimensionError("loop_count: patterns have different N");
  const int m = alpha.points();
  std::vector<char> seen(m + 1, 0);
  int loops = 0;
  for (int i = 1; i <= m; ++i) {
    if (seen[i]) continue;
    ++loops;
    int j = i;
    do {
      seen[j] = 1;
      const int k = alpha.partner(j);
      seen[k] = 1;
      j = beta.partner(k);
    } while (j != i);
  }
  return loops;
}

std::vector<int> loop_through(const LinkPattern& alpha, const LinkPattern& beta, int i) {
  if (alpha.n() != beta.n()) throw DimensionError("loop_through: patterns have different N");
  std::vector<int> pts;
  int j = i;
  do {
    pts.push_back(j);
    const int k = alpha.partner(j);
    pts.push_back(k);
    j = beta.partner(k);
  } while (j != i);
  std::sort(pts.begin(), pts.end());
  return pts;
}

Eigen::MatrixXd meander_matrix(int n, double q) {
  if (!(q > 0)) throw PreconditionError("meander_matrix: q must be positive");
  const auto pats = enumerate_patterns(n);
  const int c = static_cast<int>(pats.size());
  const double sq = std::sqrt(q);
  Eigen::MatrixXd m(c, c);
  for (int a = 0; a < c; ++a)
    for (int b = a; b < c; ++b) m(a, b) = m(b, a) = std::pow(sq, loop_count(pats[a], pats[b]));
  return m;
}

LinkPattern remove_link(const LinkPattern& beta, int j) {
  if (!beta.has_link(j, j + 1)) throw PreconditionError("remove_link: {j,j+1} is not a link");
  std::vector<std::array<int, 2>> v;
  auto relabel = [j](int k) { return k > j + 1 ? k - 2 : k; };
  for (const auto& l : beta.links())
    if (l[0] != j) v.push_back({relabel(l[0]), relabel(l[1])});
  return LinkPattern::from_pairs(v);
}

LinkPattern tie(const LinkPattern& beta, int j) {
  if (j < 1 || j >= beta.points()) throw PreconditionError("tie: index out of range");
  if (beta.has_link(j, j + 1)) return beta;
  const int k1 = beta.partner(j), k2 = beta.partner(j + 1);
  std::vector<std::array<int, 2>> v;
  for (const auto& l : beta.links())
    if (l[0] != j && l[1] != j && l[0] != j + 1 && l[1] != j + 1) v.push_back(l);
  v.push_back({j, j + 1});
  v.push_back({k1, k2});
  return LinkPattern::from_pairs(v);
}

NonCrossingPartition NonCrossingPartition::make(int n, std::vector<std::vector<int>> blocks) {
  std::vector<int> owner(n + 1, -1);
  for (auto& b : blocks) {
    if (b.empty()) throw ValidationError("empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end());
  for (int k = 0; k < static_cast<int>(blocks.size()); ++k)
    for (int e : blocks[k]) {
      if (e < 1 || e > n) throw ValidationError("block element out of range");
      if (owner[e] >= 0) throw ValidationError("element in two blocks");
      owner[e] = k;
    }
  for (int e = 1; e <= n; ++e)
    if (owner[e] < 0) throw ValidationError("blocks do not cover all arcs");
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d)
          if (owner[a] == owner[c] && owner[b] == owner[d] && owner[a] != owner[b])
            throw ValidationError("partition is crossing");
  return NonCrossingPartition{n, std::move(blocks)};
}

NonCrossingPartition NonCrossingPartition::singletons(int n) {
  std::vector<std::vector<int>> b;
  for (int r = 1; r <= n; ++r) b.push_back({r});
  return make(n, b);
}

NonCrossingPartition NonCrossingPartition::one_block(int n) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 1);
  return make(n, {all});
}

LinkPattern partition_to_pattern(const NonCrossingPartition& pi) {
  const auto checked = NonCrossingPartition::make(pi.n, pi.blocks);
  std::vector<std::array<int, 2>> v;
  for (const auto& b : checked.blocks) {
    const int k = static_cast<int>(b.size());
    for (int i = 0; i + 1 < k; ++i) v.push_back({2 * b[i], 2 * b[i + 1] - 1});
    v.push_back({2 * b[0] - 1, 2 * b[k - 1]});
  }
  return LinkPattern::from_pairs(v);
}

NonCrossingPartition pattern_to_partition(const LinkPattern& beta) {
  const int n = beta.n();
  DisjointSet ds(n + 1);
  for (const auto& l : beta.links()) ds.unite((l[0] + 1) / 2, (l[1] + 1) / 2);
  std::map<int, std::vector<int>> groups;
  for (int r = 1; r <= n; ++r) groups[ds.find(r)].push_back(r);
  std::vector<std::vector<int>> blocks;
  for (auto& [k, g] : groups) blocks.push_back(std::move(g));
  return NonCrossingPartition::make(n, blocks);
}

int join_blocks(const NonCrossingPartition& a, const NonCrossingPartition& b) {
  if (a.n != b.n) throw DimensionError("join_blocks: ground sets differ");
  DisjointSet ds(a.n + 1);
  for (const auto* p : {&a, &b})
    for (const auto& blk : p->blocks)
      for (int e : blk) ds.unite(e, blk[0]);
  int c = 0;
  for (int r = 1; r <= a.n; ++r) c += ds.find(r) == r;
  return c;
}

LinkPattern parse_pattern(const std::string& text) {
  std::vector<std::array<int, 2>> pairs;
  std::string clean;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) clean += ch;
  if (clean.empty()) throw ValidationError("empty pattern string");
  std::stringstream ss(clean);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size())
      throw ValidationError("malformed link '" + tok + "', expected a-b");
    try {
      std::size_t used1 = 0, used2 = 0;
      const int a = std::stoi(tok.substr(0, dash), &used1);
      const int b = std::stoi(tok.substr(dash + 1), &used2);
      if (used1 != dash || used2 != tok.size() - dash - 1) throw std::invalid_argument("x");
      pairs.push_back({a, b});
    } catch (const std::logic_error&) {
      throw ValidationError("malformed link '" + tok + "', expected integers");
    }
  }
  return LinkPattern::from_pairs(pairs);
}

}  // namespace fk

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "fk/errors.hpp"
#include "fk/rcm.hpp"

namespace fk {

namespace {

int uf_find(std::vector<int>& p, int a) {
  while (p[a] != a) a = p[a] = p[p[a]];
  return a;
}

void uf_union(std::vector<int>& p, int a, int b) {
  a = uf_find(p, a);
  b = uf_find(p, b);
  if (a != b) p[a] = b;
}

}  // namespace

SwSampler::SwSampler(const LatticePolygon& poly, const LinkPattern& beta, std::uint64_t seed, SamplerOptions opt)
    : poly_(poly), beta_(beta), p_(opt.p < 0 ? critical_p(2.0) : opt.p), glauber_(opt.glauber), rng_(seed) {
  if (beta.n() != poly.n()) throw DimensionError("sampler: boundary pattern has the wrong number of links");
  if (!(p_ >= 0 && p_ <= 1)) throw PreconditionError("sampler: p must lie in [0,1]");
  config_.open.assign(poly.edges.size(), 0);
  block_of_arc_.assign(poly.n(), 0);
  const auto part = pattern_to_partition(beta);
  for (int b = 0; b < part.n_blocks(); ++b)
    for (int r : part.blocks[b]) block_of_arc_[r - 1] = b;
  parent_.resize(poly.n_nodes);
  const long double t = std::ldexp(static_cast<long double>(p_), 64);
  p_threshold_ = p_ >= 1 ? UINT64_MAX : static_cast<std::uint64_t>(t);
}

void SwSampler::sweep() {
  if (glauber_)
    sweep_glauber();
  else
    sweep_sw();
  ++config_.generation;
}

void SwSampler::sweep_sw() {
  std::iota(parent_.begin(), parent_.end(), 0);
  const int n = poly_.n();
  std::vector<int> first(n, -1);
  for (int r = 0; r < n; ++r) {
    int& f = first[block_of_arc_[r]];
    if (f < 0)
      f = r;
    else
      uf_union(parent_, r, f);
  }
  const std::size_t E = poly_.edges.size();
  for (std::size_t e = 0; e < E; ++e)
    if (config_.open[e]) uf_union(parent_, poly_.edge_nodes[e][0], poly_.edge_nodes[e][1]);
  // One random bit per cluster root.
  std::vector<std::uint8_t> spin(parent_.size());
  std::uint64_t bits = 0;
  int left = 0;
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    if (uf_find(parent_, static_cast<int>(v)) != static_cast<int>(v)) continue;
    if (left == 0) {
      bits = rng_();
      left = 64;
    }
    spin[v] = bits & 1;
    bits >>= 1;
    --left;
  }
  for (std::size_t e = 0; e < E; ++e) {
    const int a = uf_find(parent_, poly_.edge_nodes[e][0]);
    const int b = uf_find(parent_, poly_.edge_nodes[e][1]);
    if (spin[a] != spin[b]) {
      config_.open[e] = 0;
    } else {
      const std::uint64_t u = rng_();
      config_.open[e] = p_threshold_ == UINT64_MAX ? 1 : (u < p_threshold_);
    }
  }
}

// Heat bath on single edges, q = 2. Connectivity is checked by search over
// the other open edges plus the external wiring.
void SwSampler::sweep_glauber() {
  const int E = static_cast<int>(poly_.edges.size());
  if (E == 0) return;
  const double q = 2.0;
  const double p_bridge = p_ / (p_ + q * (1 - p_));
  std::vector<std::vector<std::pair<int, int>>> adj(poly_.n_nodes);
  for (int e = 0; e < E; ++e) {
    adj[poly_.edge_nodes[e][0]].push_back({poly_.edge_nodes[e][1], e});
    adj[poly_.edge_nodes[e][1]].push_back({poly_.edge_nodes[e][0], e});
  }
  for (int r = 0; r < poly_.n(); ++r)
    for (int s = r + 1; s < poly_.n(); ++s)
      if (block_of_arc_[r] == block_of_arc_[s]) {
        adj[r].push_back({s, -1});
        adj[s].push_back({r, -1});
      }
  std::uniform_int_distribution<int> pick(0, E - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<int> seen(poly_.n_nodes, -1), stack;
  for (int step = 0; step < E; ++step) {
    const int e = pick(rng_);
    const int a = poly_.edge_nodes[e][0], b = poly_.edge_nodes[e][1];
    bool connected = a == b;
    if (!connected) {
      stack.assign(1, a);
      seen[a] = step;
      while (!stack.empty() && !connected) {
        const int v = stack.back();
        stack.pop_back();
        for (auto [w, f] : adj[v]) {
          if (f == e || (f >= 0 && !config_.open[f]) || seen[w] == step) continue;
          if (w == b) {
            connected = true;
            break;
          }
          seen[w] = step;
          stack.push_back(w);
        }
      }
    }
    config_.open[e] = unif(rng_) < (connected ? p_ : p_bridge);
  }
}

int SwSampler::pattern_index() const {
  std::vector<int> par(poly_.n_nodes);
  std::iota(par.begin(), par.end(), 0);
  for (std::size_t e = 0; e < poly_.edges.size(); ++e)
    if (config_.open[e]) uf_union(par, poly_.edge_nodes[e][0], poly_.edge_nodes[e][1]);
  std::vector<int> key(poly_.n());
  for (int r = 0; r < poly_.n(); ++r) key[r] = uf_find(par, r);
  auto it = index_cache_.find(key);
  if (it != index_cache_.end()) return it->second;
  const int idx = fk::pattern_index(connectivity_pattern(config_, poly_, beta_));
  index_cache_.emplace(std::move(key), idx);
  return idx;
}

LinkPattern SwSampler::pattern() const { return connectivity_pattern(config_, poly_, beta_); }

void sw_sample(const LatticePolygon& poly, const LinkPattern& beta, long sweeps, long burn_in, std::uint64_t seed,
               const SampleCallback& cb, SamplerOptions opt) {
  if (sweeps < 0) throw PreconditionError("sw_sample: negative sweep count");
  SwSampler s(poly, beta, seed, opt);
  if (burn_in < 0) {
    // Pilot run: burn in for max(1000, 10 tau) sweeps.
    const long pilot = 1000;
    const int C = static_cast<int>(catalan(poly.n()));
    std::vector<std::vector<double>> ind(C, std::vector<double>(pilot, 0.0));
    for (long t = 0; t < pilot; ++t) {
      s.sweep();
      ind[s.pattern_index()][t] = 1.0;
    }
    double tau = 0.5;
    for (const auto& series : ind) tau = std::max(tau, integrated_autocorrelation(series));
    const long extra = static_cast<long>(std::ceil(10 * tau)) - pilot;
    for (long t = 0; t < extra; ++t) s.sweep();
  } else {
    for (long t = 0; t < burn_in; ++t) s.sweep();
  }
  for (long t = 0; t < sweeps; ++t) {
    s.sweep();
    cb(s.config(), s.pattern_index());
  }
}

std::vector<int> sw_stream(const LatticePolygon& poly, const LinkPattern& beta, long sweeps, long burn_in,
                           std::uint64_t seed, SamplerOptions opt) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::max(0L, sweeps)));
  sw_sample(poly, beta, sweeps, burn_in, seed, [&](const BondConfig&, int idx) { out.push_back(idx); }, opt);
  return out;
}

double integrated_autocorrelation(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 2) return 0.5;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double c0 = 0;
  for (double v : x) c0 += (v - mean) * (v - mean);
  c0 /= n;
  if (c0 <= 0) return 0.5;
  double tau = 0.5;
  for (std::size_t M = 1; M < n / 2; ++M) {
    double c = 0;
    for (std::size_t t = 0; t + M < n; ++t) c += (x[t] - mean) * (x[t + M] - mean);
    tau += c / n / c0;
    if (static_cast<double>(M) >= 6.0 * tau) break;
  }
  return std::max(tau, 0.5);
}

CrossingDistribution estimate_probs(const std::vector<std::vector<int>>& chains, const LinkPattern& boundary,
                                    std::size_t max_samples) {
  const int n = boundary.n();
  const auto pats = enumerate_patterns(n);
  const std::size_t C = pats.size();
  std::vector<std::size_t> counts(C, 0);
  std::size_t total = 0;
  std::vector<double> tau_w(C, 0.0);
  for (const auto& chain : chains) {
    const std::size_t len = std::min(chain.size(), max_samples);
    if (len == 0) continue;
    for (std::size_t t = 0; t < len; ++t) {
      const int a = chain[t];
      if (a < 0 || static_cast<std::size_t>(a) >= C) throw ValidationError("estimate_probs: pattern index out of range");
      ++counts[a];
    }
    for (std::size_t a = 0; a < C; ++a) {
      std::vector<double> s(len);
      for (std::size_t t = 0; t < len; ++t) s[t] = chain[t] == static_cast<int>(a) ? 1.0 : 0.0;
      tau_w[a] += integrated_autocorrelation(s) * len;
    }
    total += len;
  }
  if (total == 0) throw PreconditionError("estimate_probs: empty sample stream");
  CrossingDistribution d;
  d.n = n;
  d.boundary = boundary;
  d.patterns = pats;
  double tau_max = 0.5;
  for (std::size_t a = 0; a < C; ++a) {
    const double p = static_cast<double>(counts[a]) / total;
    const double tau = std::max(0.5, tau_w[a] / total);
    tau_max = std::max(tau_max, tau);
    d.probs.push_back(p);
    d.stderrs.push_back(std::sqrt(p * (1 - p) * 2 * tau / total));
  }
  d.ess = total / (2 * tau_max);
  return d;
}

CrossingDistribution estimate_probs(const std::vector<int>& stream, const LinkPattern& boundary,
                                    std::size_t max_samples) {
  return estimate_probs(std::vector<std::vector<int>>{stream}, boundary, max_samples);
}

std::uint64_t chain_seed(std::uint64_t seed, int chain) {
  std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(chain)};
  std::array<std::uint32_t, 2> out;
  ss.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

int default_threads() {
  if (const char* env = std::getenv("FK_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::vector<int>> run_chains(const LatticePolygon& poly, const LinkPattern& beta, const ChainPlan& plan,
                                         SamplerOptions opt) {
  if (plan.chains < 1) throw PreconditionError("run_chains: need at least one chain");
  std::vector<std::vector<int>> out(plan.chains);
  const int threads = std::min(plan.chains, plan.threads > 0 ? plan.threads : default_threads());
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errs(plan.chains);
  auto work = [&] {
    for (int c; (c = next++) < plan.chains;) {
      try {
        out[c] = sw_stream(poly, beta, plan.sweeps, plan.burn_in, chain_seed(plan.seed, c), opt);
      } catch (...) {
        errs[c] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace fk

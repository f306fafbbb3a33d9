#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fk/coulomb.hpp"
#include "fk/errors.hpp"
#include "fk/io.hpp"
#include "fk/predict.hpp"
#include "fk/rcm.hpp"

namespace {

using namespace fk;

struct Common {
  std::string beta, points, rect, out = "json", format = "text";
  double kappa = 16.0 / 3.0, tol = -1;
};

struct LatticeArgs {
  std::string config, lattice, marked, beta;
  double q = -1, p = -2, tol = -1;
  long sweeps = -1, burn_in = -2;
  int chains = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

Points points_of(const Common& c) {
  if (!c.points.empty() && !c.rect.empty()) throw ValidationError("give either --points or --rect, not both");
  if (!c.rect.empty()) return marked_points_halfplane(io::parse_rect(c.rect));
  if (c.points.empty()) throw ValidationError("missing --points or --rect");
  return io::parse_points(c.points);
}

io::RunConfig config_of(const LatticeArgs& a) {
  io::RunConfig c;
  if (!a.config.empty()) {
    std::ifstream f(a.config);
    if (!f) throw ValidationError("cannot read config file '" + a.config + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    c = io::parse_config_json(ss.str());
  }
  if (!a.lattice.empty()) {
    const auto wh = io::parse_ints(a.lattice);
    if (wh.size() != 2) throw ValidationError("--lattice expects 'W,H'");
    c.width = wh[0];
    c.height = wh[1];
  }
  if (!a.marked.empty()) c.marked = io::parse_ints(a.marked);
  if (!a.beta.empty()) c.beta = a.beta;
  if (a.q > 0) c.q = a.q;
  if (a.p >= -1) c.p = a.p;
  if (a.tol >= 0) c.tol = a.tol;
  if (a.sweeps >= 0) c.sweeps = a.sweeps;
  if (a.burn_in >= -1) c.burn_in = a.burn_in;
  if (a.chains > 0) c.chains = a.chains;
  if (a.seed_set) c.seed = a.seed;
  return c;
}

void add_lattice_flags(CLI::App* s, LatticeArgs& a) {
  s->add_option("config", a.config, "JSON run configuration");
  s->add_option("--lattice", a.lattice, "W,H");
  s->add_option("--marked", a.marked, "boundary offsets of the marked points");
  s->add_option("--beta", a.beta, "boundary link pattern, e.g. 1-2,3-4");
  s->add_option("--q", a.q, "cluster weight");
  s->add_option("--p", a.p, "edge probability (default critical)");
  s->add_option("--tol", a.tol, "tolerance against theory");
  s->add_option("--sweeps", a.sweeps, "sweeps per chain");
  s->add_option("--burn-in", a.burn_in, "burn-in sweeps (-1 automatic)");
  s->add_option("--chains", a.chains, "number of chains");
  s->add_option("--seed", a.seed, "RNG seed")->each([&](const std::string&) { a.seed_set = true; });
}

void print_dist(const CrossingDistribution& d, io::Provenance p, const std::string& out) {
  if (out == "csv")
    std::cout << io::distribution_csv(d, p);
  else
    std::cout << io::distribution_json(d, p) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossing statistics for FK-Ising loops in lattice polygons"};
  app.require_subcommand(1);
  Common c;
  LatticeArgs la;
  int n = 2;
  double q = 2.0;

  auto* patterns = app.add_subcommand("patterns", "list link patterns in canonical order");
  patterns->add_option("N", n)->required();
  patterns->add_option("--format", c.format, "text or nested")->check(CLI::IsMember({"text", "nested"}));

  auto* meander = app.add_subcommand("meander", "meander matrix as CSV");
  meander->add_option("N", n)->required();
  meander->add_option("--q", q, "loop weight");

  auto* eval_f = app.add_subcommand("eval-f", "explicit partition function at kappa = 16/3");
  auto* eval_g = app.add_subcommand("eval-g", "Coulomb-gas integral by quadrature");
  auto* predict = app.add_subcommand("predict", "theoretical crossing distribution");
  for (auto* s : {eval_f, eval_g, predict}) {
    s->add_option("--beta", c.beta, "boundary link pattern")->required();
    s->add_option("--points", c.points, "increasing real points x_1,...,x_2N");
    s->add_option("--rect", c.rect, "rectangle 'L,M:p1,...' with perimeter positions");
  }
  eval_g->add_option("--kappa", c.kappa, "SLE parameter in (4,8)");
  eval_g->add_option("--tol", c.tol, "relative tolerance");
  predict->add_option("--out", c.out)->check(CLI::IsMember({"json", "csv"}));

  auto* enumerate = app.add_subcommand("enumerate", "exact distribution on a small lattice");
  auto* simulate = app.add_subcommand("simulate", "Swendsen-Wang estimate");
  auto* compare = app.add_subcommand("compare", "simulation against enumeration or theory");
  for (auto* s : {enumerate, simulate, compare}) add_lattice_flags(s, la);
  enumerate->add_option("--out", c.out)->check(CLI::IsMember({"json", "csv"}));
  simulate->add_option("--out", c.out)->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::cout.precision(12);
    if (*patterns) {
      if (n < 0) throw ValidationError("N must be nonnegative");
      if (n > kMaxLinks) throw CapacityError("N is limited to " + std::to_string(kMaxLinks));
      for (const auto& a : enumerate_patterns(n)) std::cout << (c.format == "nested" ? a.to_nested() : a.to_string()) << '\n';
    } else if (*meander) {
      if (n < 0) throw ValidationError("N must be nonnegative");
      const auto M = meander_matrix(n, q);
      for (int i = 0; i < M.rows(); ++i) {
        for (int j = 0; j < M.cols(); ++j) std::cout << (j ? "," : "") << io::fmt(M(i, j));
        std::cout << '\n';
      }
    } else if (*eval_f) {
      std::cout << io::fmt(f_beta(parse_pattern(c.beta), points_of(c))) << '\n';
    } else if (*eval_g) {
      const auto p = CouplingParams::from_kappa(c.kappa);
      const double tol = c.tol > 0 ? c.tol : 1e-10;
      std::cout << io::fmt(g_beta_numeric(parse_pattern(c.beta), points_of(c), p, tol)) << '\n';
    } else if (*predict) {
      print_dist(crossing_distribution(parse_pattern(c.beta), points_of(c)), io::Provenance::theory, c.out);
    } else if (*enumerate) {
      const auto cfg = config_of(la);
      const auto d = exact_distribution(io::polygon_of(cfg), parse_pattern(cfg.beta), cfg.q, io::p_of(cfg));
      print_dist(d, io::Provenance::enumeration, c.out);
    } else if (*simulate) {
      const auto cfg = config_of(la);
      if (cfg.q != 2.0) throw PreconditionError("simulate: the sampler supports q = 2 only");
      ChainPlan plan;
      plan.sweeps = cfg.sweeps;
      plan.burn_in = cfg.burn_in;
      plan.chains = cfg.chains;
      plan.seed = cfg.seed;
      SamplerOptions opt;
      opt.p = io::p_of(cfg);
      const auto beta = parse_pattern(cfg.beta);
      const auto d = estimate_probs(run_chains(io::polygon_of(cfg), beta, plan, opt), beta);
      print_dist(d, io::Provenance::monte_carlo, c.out);
    } else if (*compare) {
      std::string cmd;
      for (int i = 0; i < argc; ++i) cmd += (i ? " " : "") + std::string(argv[i]);
      const auto rep = io::compare_run(config_of(la), cmd);
      std::cout << io::report_json(rep) << '\n';
      return rep.pass ? 0 : 2;
    }
  } catch (const fk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

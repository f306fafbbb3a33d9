#include "fk/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fk/errors.hpp"

namespace fk::io {

using nlohmann::json;

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(fmt(x));
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("not a number: '" + s + "'");
  return v;
}

}  // namespace

Points parse_points(const std::string& text) {
  Points x;
  for (const auto& s : split(text, ',')) x.push_back(to_double(s));
  check_points(x);
  return x;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split(text, ',')) {
    const double v = to_double(s);
    if (v != std::floor(v)) throw ValidationError("not an integer: '" + s + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

RectangleSpec parse_rect(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("rectangle spec must look like 'L,M:p1,p2,...'");
  const auto dims = split(text.substr(0, colon), ',');
  if (dims.size() != 2) throw ValidationError("rectangle spec needs exactly two side lengths");
  RectangleSpec r;
  r.L = to_double(dims[0]);
  r.M = to_double(dims[1]);
  for (const auto& s : split(text.substr(colon + 1), ',')) r.positions.push_back(to_double(s));
  return r;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::theory: return "theory";
    case Provenance::enumeration: return "enumeration";
    default: return "monte-carlo";
  }
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "theory") return Provenance::theory;
  if (s == "enumeration") return Provenance::enumeration;
  if (s == "monte-carlo") return Provenance::monte_carlo;
  throw ValidationError("unknown provenance label '" + s + "'");
}

namespace {

// Probabilities as a map pattern -> value; key order is alphabetical in the
// text, canonical in memory.
json dist_to_json(const CrossingDistribution& d, Provenance p) {
  json j;
  j["provenance"] = to_string(p);
  j["n"] = d.n;
  j["boundary"] = d.boundary.to_string();
  json probs = json::object(), ses = json::object();
  for (std::size_t a = 0; a < d.patterns.size(); ++a) {
    probs[d.patterns[a].to_string()] = round12(d.probs[a]);
    if (!d.stderrs.empty()) ses[d.patterns[a].to_string()] = round12(d.stderrs[a]);
  }
  j["probs"] = probs;
  if (!d.stderrs.empty()) j["stderrs"] = ses;
  if (p == Provenance::monte_carlo) j["ess"] = round12(d.ess);
  return j;
}

CrossingDistribution dist_from_json(const json& j, Provenance* p) {
  CrossingDistribution d;
  try {
    if (p) *p = provenance_from_string(j.at("provenance").get<std::string>());
    d.n = j.at("n").get<int>();
    d.boundary = parse_pattern(j.at("boundary").get<std::string>());
    if (d.boundary.n() != d.n) throw ValidationError("malformed distribution JSON: boundary does not match n");
    const auto& probs = j.at("probs");
    if (probs.size() != catalan(d.n)) throw ValidationError("malformed distribution JSON: wrong number of patterns");
    d.patterns = enumerate_patterns(d.n);
    for (const auto& a : d.patterns) {
      d.probs.push_back(probs.at(a.to_string()).get<double>());
      if (j.contains("stderrs")) d.stderrs.push_back(j["stderrs"].at(a.to_string()).get<double>());
    }
    if (j.contains("ess")) d.ess = j["ess"].get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed distribution JSON: ") + e.what());
  }
  return d;
}

}  // namespace

std::string distribution_json(const CrossingDistribution& d, Provenance p) { return dist_to_json(d, p).dump(2); }

CrossingDistribution parse_distribution_json(const std::string& text, Provenance* p) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return dist_from_json(j, p);
}

// Header line, then one row per pattern. Patterns are quoted because they
// contain commas.
std::string distribution_csv(const CrossingDistribution& d, Provenance p) {
  std::ostringstream os;
  os << "provenance,boundary,pattern,prob,stderr\n";
  for (std::size_t a = 0; a < d.patterns.size(); ++a) {
    os << to_string(p) << ",\"" << d.boundary.to_string() << "\",\"" << d.patterns[a].to_string() << "\","
       << fmt(d.probs[a]) << ',';
    if (!d.stderrs.empty()) os << fmt(d.stderrs[a]);
    os << '\n';
  }
  return os.str();
}

CrossingDistribution parse_distribution_csv(const std::string& text, Provenance* p) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "provenance,boundary,pattern,prob,stderr")
    throw ValidationError("malformed CSV header");
  CrossingDistribution d;
  bool any_se = false, first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"')
        quoted = !quoted;
      else if (ch == ',' && !quoted) {
        f.push_back(cur);
        cur.clear();
      } else
        cur += ch;
    }
    f.push_back(cur);
    if (f.size() != 5) throw ValidationError("malformed CSV row: '" + line + "'");
    const auto prov = provenance_from_string(f[0]);
    if (first) {
      if (p) *p = prov;
      d.boundary = parse_pattern(f[1]);
      d.n = d.boundary.n();
      first = false;
    }
    d.patterns.push_back(parse_pattern(f[2]));
    d.probs.push_back(to_double(f[3]));
    if (!f[4].empty()) {
      any_se = true;
      d.stderrs.push_back(to_double(f[4]));
    }
  }
  if (first) throw ValidationError("CSV has no rows");
  if (any_se && d.stderrs.size() != d.probs.size()) throw ValidationError("CSV has stderr on some rows only");
  return d;
}

std::string config_json(const RunConfig& c) {
  json j;
  j["width"] = c.width;
  j["height"] = c.height;
  j["mesh"] = round12(c.mesh);
  j["marked"] = c.marked;
  j["beta"] = c.beta;
  j["q"] = round12(c.q);
  j["p"] = round12(c.p);
  j["sweeps"] = c.sweeps;
  j["burn_in"] = c.burn_in;
  j["chains"] = c.chains;
  j["seed"] = c.seed;
  j["tol"] = round12(c.tol);
  return j.dump(2);
}

RunConfig parse_config_json(const std::string& text) {
  RunConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    for (const auto& [k, v] : j.items()) {
      if (k == "width") c.width = v.get<int>();
      else if (k == "height") c.height = v.get<int>();
      else if (k == "mesh") c.mesh = v.get<double>();
      else if (k == "marked") c.marked = v.get<std::vector<int>>();
      else if (k == "beta") c.beta = v.get<std::string>();
      else if (k == "q") c.q = v.get<double>();
      else if (k == "p") c.p = v.get<double>();
      else if (k == "sweeps") c.sweeps = v.get<long>();
      else if (k == "burn_in") c.burn_in = v.get<long>();
      else if (k == "chains") c.chains = v.get<int>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "tol") c.tol = v.get<double>();
      else throw ValidationError("unknown config key '" + k + "'");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config JSON: ") + e.what());
  }
  return c;
}

LatticePolygon polygon_of(const RunConfig& c) {
  std::vector<int> marked = c.marked;
  if (marked.empty()) {
    const int W = c.width, H = c.height;
    marked = {boundary_offset(W, H, 0, H), boundary_offset(W, H, 0, 0), boundary_offset(W, H, W, 0),
              boundary_offset(W, H, W, H)};
  }
  return build_polygon(c.width, c.height, marked, c.mesh);
}

double p_of(const RunConfig& c) { return c.p < 0 ? critical_p(c.q) : c.p; }

RectangleSpec effective_rectangle(const LatticePolygon& P) {
  const double W = P.width, H = P.height, M = H + 1, s = M / H;
  RectangleSpec r;
  r.L = W;
  r.M = M;
  for (int k = 1; k <= 2 * P.n(); ++k) {
    const int v = P.marked_vertex(k);
    const double i = P.col(v), j = P.row(v);
    double pos;
    const int o = P.marked[k - 1];
    if (o <= P.width)
      pos = i;
    else if (o <= P.width + P.height)
      pos = W + j * s;
    else if (o <= 2 * P.width + P.height)
      pos = W + M + (W - i);
    else
      pos = 2 * W + M + (H - j) * s;
    r.positions.push_back(pos);
  }
  return r;
}

RunReport compare_run(const RunConfig& c, const std::string& command) {
  if (c.q != 2.0) throw PreconditionError("compare: the sampler supports q = 2 only");
  const auto poly = polygon_of(c);
  const auto beta = parse_pattern(c.beta);
  if (beta.n() != poly.n()) throw DimensionError("compare: boundary pattern does not match the marked points");
  const double p = p_of(c);
  RunReport rep;
  rep.command = command;
  rep.config = c;
  const bool can_enum = static_cast<int>(poly.edges.size()) <= kMaxEnumEdges;
  const bool can_theory = !can_enum && std::abs(p - critical_p(2.0)) < 1e-15 && poly.n() <= 3;
  CrossingDistribution ex, th;
  if (can_enum) ex = exact_distribution(poly, beta, c.q, p);
  if (can_theory) th = crossing_distribution(beta, marked_points_halfplane(effective_rectangle(poly)));
  ChainPlan plan;
  plan.sweeps = c.sweeps;
  plan.burn_in = c.burn_in;
  plan.chains = c.chains;
  plan.seed = c.seed;
  SamplerOptions opt;
  opt.p = p;
  const auto mc = estimate_probs(run_chains(poly, beta, plan, opt), beta);
  for (std::size_t a = 0; a < mc.patterns.size(); ++a) {
    CompareEntry e;
    e.pattern = mc.patterns[a].to_string();
    e.monte_carlo = mc.probs[a];
    e.stderr_mc = mc.stderrs[a];
    if (can_enum) {
      e.has_enumeration = true;
      e.enumeration = ex.probs[a];
      e.pass = std::abs(e.monte_carlo - e.enumeration) <= 4 * e.stderr_mc + 1e-12;
    }
    if (can_theory) {
      e.has_theory = true;
      e.theory = th.probs[a];
      e.pass = std::abs(e.monte_carlo - e.theory) <= c.tol + 3 * e.stderr_mc;
    }
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(e);
  }
  return rep;
}

std::string report_json(const RunReport& r) {
  json j;
  j["command"] = r.command;
  j["inputs"] = json::parse(config_json(r.config));
  json rows = json::array();
  for (const auto& e : r.entries) {
    json row;
    row["pattern"] = e.pattern;
    if (e.has_theory) row["theory"] = round12(e.theory);
    if (e.has_enumeration) row["enumeration"] = round12(e.enumeration);
    row["monte-carlo"] = {{"prob", round12(e.monte_carlo)}, {"stderr", round12(e.stderr_mc)}};
    row["pass"] = e.pass;
    rows.push_back(row);
  }
  j["results"] = rows;
  j["pass"] = r.pass;
  return j.dump(2);
}

}  // namespace fk::io

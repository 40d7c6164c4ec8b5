#include "kothe/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace kothe::io {

namespace {

std::runtime_error parse_error(const std::string& what) {
  return std::runtime_error("parse error: " + what);
}

json dense_vector(const CoordVector& v) {
  std::vector<json> out(static_cast<std::size_t>(std::max(v.max_index(), 0)));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = encode_double(0.0);
  for (const auto& [n, val] : v.coords) out[n - 1] = encode_double(val);
  return out;
}

CoordVector vector_from(const json& j, CoordVector::Role role) {
  if (!j.is_array()) throw parse_error("vector must be an array");
  std::vector<double> vals;
  vals.reserve(j.size());
  for (const auto& e : j) vals.push_back(decode_double(e));
  return CoordVector::dense(vals, role);
}

json grid_to_json(const std::vector<std::vector<double>>& grid) {
  json out = json::array();
  for (const auto& row : grid) {
    json jrow = json::array();
    for (double v : row) jrow.push_back(encode_double(v));
    out.push_back(std::move(jrow));
  }
  return out;
}

std::vector<std::vector<double>> grid_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw parse_error("grid must be a nonempty array");
  std::vector<std::vector<double>> grid;
  for (const auto& jrow : j) {
    if (!jrow.is_array()) throw parse_error("grid row must be an array");
    std::vector<double> row;
    for (const auto& e : jrow) row.push_back(decode_double(e));
    grid.push_back(std::move(row));
  }
  return grid;
}

json to_json(const PerR& pr) {
  return {{"r", pr.r}, {"k0", pr.k0}, {"C", encode_double(pr.c)}};
}

PerR per_r_from_json(const json& j) {
  PerR pr;
  pr.r = j.at("r").get<int>();
  pr.k0 = j.at("k0").get<int>();
  pr.c = decode_double(j.at("C"));
  return pr;
}

json to_json(const RatioSample& s) {
  return {{"prefix", s.prefix}, {"indices", s.indices}, {"value", encode_double(s.value)}};
}

RatioSample sample_from_json(const json& j) {
  RatioSample s;
  s.prefix = j.at("prefix").get<int>();
  s.indices = j.at("indices").get<std::vector<int>>();
  s.value = decode_double(j.at("value"));
  return s;
}

json to_json(const FailedCandidate& f) {
  json samples = json::array();
  for (const auto& s : f.samples) samples.push_back(to_json(s));
  return {{"N", f.n_level},
          {"r", f.r},
          {"samples", std::move(samples)},
          {"growth", io::to_json(f.growth)}};
}

FailedCandidate failed_from_json(const json& j) {
  FailedCandidate f;
  f.n_level = j.at("N").get<int>();
  f.r = j.at("r").get<int>();
  for (const auto& s : j.at("samples")) f.samples.push_back(sample_from_json(s));
  f.growth = growth_from_json(j.at("growth"));
  return f;
}

const char* mode_name(CheckMode m) {
  return m == CheckMode::Symbolic ? "symbolic" : "numeric";
}

CheckMode mode_from(const std::string& s) {
  if (s == "numeric") return CheckMode::Numeric;
  if (s == "symbolic") return CheckMode::Symbolic;
  throw parse_error("unknown mode '" + s + "'");
}

}  // namespace

json encode_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) throw std::invalid_argument("cannot serialize NaN");
  return v;
}

double decode_double(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return kPosInf;
    if (s == "-inf") return kNegInf;
    throw parse_error("bad numeric literal '" + s + "'");
  }
  if (!j.is_number()) throw parse_error("expected a number");
  return j.get<double>();
}

json to_json(const EllNorm& ell) { return ell.name(); }

EllNorm ell_from_json(const json& j) {
  if (!j.is_string()) throw parse_error("ell must be a string");
  return EllNorm::parse(j.get<std::string>());
}

json to_json(const KotheMatrix& a) {
  json out;
  out["label"] = a.label();
  out["n_max"] = a.n_max();
  out["k_max"] = a.k_max();
  if (a.generator()) {
    const auto& gen = *a.generator();
    json alpha;
    switch (gen.alpha_rule.kind) {
      case PowerSeriesGenerator::AlphaRule::Kind::Linear:
        alpha = {{"rule", "linear"}, {"scale", encode_double(gen.alpha_rule.scale)}};
        break;
      case PowerSeriesGenerator::AlphaRule::Kind::Log:
        alpha = {{"rule", "log"}, {"scale", encode_double(gen.alpha_rule.scale)}};
        break;
      case PowerSeriesGenerator::AlphaRule::Kind::List: {
        json vals = json::array();
        for (double v : gen.alpha_rule.values) vals.push_back(encode_double(v));
        alpha = {{"rule", "list"}, {"values", std::move(vals)}};
        break;
      }
    }
    out["source"] = {
        {"kind", "power_series"},
        {"type", gen.type == PowerSeriesGenerator::Type::Finite ? "finite" : "infinite"},
        {"alpha", std::move(alpha)}};
  } else {
    std::vector<std::vector<double>> grid(a.n_max());
    for (int n = 1; n <= a.n_max(); ++n)
      for (int k = 1; k <= a.k_max(); ++k) grid[n - 1].push_back(a.entry(n, k));
    out["source"] = {{"kind", "explicit"}, {"grid", grid_to_json(grid)}};
  }
  return out;
}

KotheMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("space file must be an object");
  std::string label = j.value("label", std::string{});
  const json& src = j.at("source");
  const std::string kind = src.at("kind").get<std::string>();
  if (kind == "explicit") {
    auto grid = grid_from_json(src.at("grid"));
    if (j.contains("n_max") && j.at("n_max").get<int>() != static_cast<int>(grid.size()))
      throw parse_error("n_max does not match the grid");
    return KotheMatrix::from_grid(std::move(grid), std::move(label));
  }
  if (kind == "power_series") {
    PowerSeriesGenerator gen;
    const std::string type = src.at("type").get<std::string>();
    if (type == "infinite")
      gen.type = PowerSeriesGenerator::Type::Infinite;
    else if (type == "finite")
      gen.type = PowerSeriesGenerator::Type::Finite;
    else
      throw parse_error("unknown power-series type '" + type + "'");
    const json& alpha = src.at("alpha");
    const std::string rule = alpha.at("rule").get<std::string>();
    if (rule == "linear") {
      gen.alpha_rule.kind = PowerSeriesGenerator::AlphaRule::Kind::Linear;
      gen.alpha_rule.scale = alpha.contains("scale") ? decode_double(alpha.at("scale")) : 1.0;
    } else if (rule == "log") {
      gen.alpha_rule.kind = PowerSeriesGenerator::AlphaRule::Kind::Log;
      gen.alpha_rule.scale = alpha.contains("scale") ? decode_double(alpha.at("scale")) : 1.0;
    } else if (rule == "list") {
      gen.alpha_rule.kind = PowerSeriesGenerator::AlphaRule::Kind::List;
      for (const auto& v : alpha.at("values"))
        gen.alpha_rule.values.push_back(decode_double(v));
    } else {
      throw parse_error("unknown alpha rule '" + rule + "'");
    }
    return KotheMatrix::from_generator(gen, j.at("n_max").get<int>(),
                                       j.at("k_max").get<int>(), std::move(label));
  }
  throw parse_error("unknown space source kind '" + kind + "'");
}

json to_json(const Space& s) {
  json out = to_json(s.matrix);
  out["ell"] = to_json(s.ell);
  return out;
}

Space space_from_json(const json& j) {
  Space s{matrix_from_json(j), EllNorm::l1()};
  if (j.contains("ell")) s.ell = ell_from_json(j.at("ell"));
  return s;
}

json to_json(const MatrixOperator& t) {
  std::vector<std::vector<double>> grid(t.codomain_dim());
  for (int v = 1; v <= t.codomain_dim(); ++v)
    for (int i = 1; i <= t.domain_dim(); ++i) grid[v - 1].push_back(t.coef(v, i));
  return {{"kind", "grid"}, {"entries", grid_to_json(grid)}};
}

json to_json(const RankOneOperator& t) {
  return {{"kind", "rank_one"}, {"u", dense_vector(t.u)}, {"x", dense_vector(t.x)}};
}

AnyOperator operator_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("operator file must be an object");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "grid") return MatrixOperator(grid_from_json(j.at("entries")));
  if (kind == "rank_one")
    return RankOneOperator{vector_from(j.at("u"), CoordVector::Role::Functional),
                           vector_from(j.at("x"), CoordVector::Role::Element)};
  throw parse_error("unknown operator kind '" + kind + "'");
}

json to_json(const SearchBudget& b) {
  json extra = json::array();
  for (const auto& m : b.extra_nmaps) extra.push_back(m);
  return {{"n_range", b.n_range},
          {"k_max", b.k_max},
          {"shifts", b.shifts},
          {"extra_nmaps", std::move(extra)},
          {"r_range", b.r_range},
          {"k0_max", b.k0_max},
          {"c_cap", encode_double(b.c_cap)},
          {"seed", b.seed}};
}

SearchBudget budget_from_json(const json& j) {
  SearchBudget b;
  b.n_range = j.value("n_range", b.n_range);
  b.k_max = j.value("k_max", b.k_max);
  if (j.contains("shifts")) b.shifts = j.at("shifts").get<std::vector<int>>();
  if (j.contains("extra_nmaps"))
    b.extra_nmaps = j.at("extra_nmaps").get<std::vector<std::vector<int>>>();
  b.r_range = j.value("r_range", b.r_range);
  b.k0_max = j.value("k0_max", b.k0_max);
  if (j.contains("c_cap")) b.c_cap = decode_double(j.at("c_cap"));
  b.seed = j.value("seed", b.seed);
  return b;
}

json to_json(const GrowthThresholds& t) {
  return {{"bounded_tol", encode_double(t.bounded_tol)},
          {"slope_tol", encode_double(t.slope_tol)},
          {"ratio_min", encode_double(t.ratio_min)}};
}

GrowthThresholds thresholds_from_json(const json& j) {
  GrowthThresholds t;
  if (j.contains("bounded_tol")) t.bounded_tol = decode_double(j.at("bounded_tol"));
  if (j.contains("slope_tol")) t.slope_tol = decode_double(j.at("slope_tol"));
  if (j.contains("ratio_min")) t.ratio_min = decode_double(j.at("ratio_min"));
  return t;
}

json to_json(const GrowthClass& g) {
  const char* kind = g.kind == GrowthClass::Kind::Bounded      ? "bounded"
                     : g.kind == GrowthClass::Kind::Diverging ? "diverging"
                                                              : "inconclusive";
  return {{"kind", kind},
          {"estimate", encode_double(g.estimate)},
          {"log_slope", encode_double(g.log_slope)},
          {"early_max", encode_double(g.early_max)},
          {"late_max", encode_double(g.late_max)},
          {"window", g.window}};
}

GrowthClass growth_from_json(const json& j) {
  GrowthClass g;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bounded")
    g.kind = GrowthClass::Kind::Bounded;
  else if (kind == "diverging")
    g.kind = GrowthClass::Kind::Diverging;
  else if (kind == "inconclusive")
    g.kind = GrowthClass::Kind::Inconclusive;
  else
    throw parse_error("unknown growth kind '" + kind + "'");
  g.estimate = decode_double(j.at("estimate"));
  g.log_slope = decode_double(j.at("log_slope"));
  g.early_max = decode_double(j.at("early_max"));
  g.late_max = decode_double(j.at("late_max"));
  g.window = j.at("window").get<int>();
  return g;
}

json to_json(const Witness& w) {
  json per_r = json::array();
  for (const auto& pr : w.per_r) per_r.push_back(to_json(pr));
  return {{"Nmap", w.nmap},
          {"N", w.n_level},
          {"per_r", std::move(per_r)},
          {"mode", mode_name(w.mode)}};
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.nmap = j.at("Nmap").get<std::vector<int>>();
  w.n_level = j.at("N").get<int>();
  for (const auto& pr : j.at("per_r")) w.per_r.push_back(per_r_from_json(pr));
  w.mode = mode_from(j.at("mode").get<std::string>());
  return w;
}

json to_json(const Counterexample& c) {
  json per_n = json::array();
  for (const auto& f : c.per_n) per_n.push_back(to_json(f));
  return {{"Nmap", c.nmap}, {"per_N", std::move(per_n)}};
}

Counterexample counterexample_from_json(const json& j) {
  Counterexample c;
  c.nmap = j.at("Nmap").get<std::vector<int>>();
  for (const auto& f : j.at("per_N")) c.per_n.push_back(failed_from_json(f));
  return c;
}

json to_json(const Verdict& v) {
  const char* kind = v.kind == Verdict::Kind::HoldsAtScale   ? "holds_at_scale"
                     : v.kind == Verdict::Kind::FailsAtScale ? "fails_at_scale"
                                                             : "inconclusive";
  json witnesses = json::array();
  for (const auto& w : v.witnesses) witnesses.push_back(to_json(w));
  json cexs = json::array();
  for (const auto& c : v.counterexamples) cexs.push_back(to_json(c));
  return {{"kind", kind},
          {"witnesses", std::move(witnesses)},
          {"counterexamples", std::move(cexs)},
          {"reason", v.reason},
          {"scope", to_json(v.scope)},
          {"mode", mode_name(v.mode)}};
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "holds_at_scale")
    v.kind = Verdict::Kind::HoldsAtScale;
  else if (kind == "fails_at_scale")
    v.kind = Verdict::Kind::FailsAtScale;
  else if (kind == "inconclusive")
    v.kind = Verdict::Kind::Inconclusive;
  else
    throw parse_error("unknown verdict kind '" + kind + "'");
  for (const auto& w : j.at("witnesses")) v.witnesses.push_back(witness_from_json(w));
  for (const auto& c : j.at("counterexamples"))
    v.counterexamples.push_back(counterexample_from_json(c));
  v.reason = j.value("reason", std::string{});
  v.scope = budget_from_json(j.at("scope"));
  v.mode = mode_from(j.at("mode").get<std::string>());
  return v;
}

json to_json(const NuclearityReport& r) {
  json theta_traj = json::object();
  for (const auto& [k, traj] : r.theta_trajectory) {
    json vals = json::array();
    for (double v : traj) vals.push_back(encode_double(v));
    theta_traj[std::to_string(k)] = std::move(vals);
  }
  json theta = json::object();
  for (const auto& [k, v] : r.theta) theta[std::to_string(k)] = encode_double(v);
  json growth = json::object();
  for (const auto& [k, g] : r.growth) growth[std::to_string(k)] = to_json(g);
  json out = {{"Nmap", r.nmap},
              {"Smap", r.smap},
              {"theta_trajectory", std::move(theta_traj)},
              {"theta", std::move(theta)},
              {"growth", std::move(growth)},
              {"verdict", to_json(r.verdict)},
              {"note", r.note}};
  if (r.symbolic_nuclear) out["symbolic_nuclear"] = *r.symbolic_nuclear;
  return out;
}

NuclearityReport nuclearity_from_json(const json& j) {
  NuclearityReport r;
  r.nmap = j.at("Nmap").get<std::vector<int>>();
  r.smap = j.at("Smap").get<std::vector<int>>();
  for (const auto& [key, vals] : j.at("theta_trajectory").items()) {
    std::vector<double> traj;
    for (const auto& v : vals) traj.push_back(decode_double(v));
    r.theta_trajectory[std::stoi(key)] = std::move(traj);
  }
  for (const auto& [key, v] : j.at("theta").items())
    r.theta[std::stoi(key)] = decode_double(v);
  for (const auto& [key, g] : j.at("growth").items())
    r.growth[std::stoi(key)] = growth_from_json(g);
  r.verdict = verdict_from_json(j.at("verdict"));
  if (j.contains("symbolic_nuclear"))
    r.symbolic_nuclear = j.at("symbolic_nuclear").get<bool>();
  r.note = j.value("note", std::string{});
  return r;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("parse error in " + path + ": " + e.what());
  }
  return j;
}

void save_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace kothe::io

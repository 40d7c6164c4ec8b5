// Command-line front end: loads space/operator files, dispatches onto the
// checker library, and writes replayable JSON reports.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kothe/criteria.hpp"
#include "kothe/io.hpp"

namespace fs = std::filesystem;
using kothe::io::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kFixtureEnv = "KOTHE_FIXTURE_DIR";

// Exit codes: 0 holds/valid, 1 fails, 3 inconclusive, 2 usage/parse error.
enum ExitCode { kOk = 0, kFails = 1, kUsage = 2, kInconclusive = 3 };

std::string resolve_path(const std::string& path) {
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv(kFixtureEnv)) {
    fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;  // let the loader report the miss
}

json load(const std::string& path) { return kothe::io::load_file(resolve_path(path)); }

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

int verdict_exit(const kothe::Verdict& v) {
  switch (v.kind) {
    case kothe::Verdict::Kind::HoldsAtScale: return kOk;
    case kothe::Verdict::Kind::FailsAtScale: return kFails;
    default: return kInconclusive;
  }
}

kothe::MatrixOperator as_matrix(const kothe::io::AnyOperator& op, int rows, int cols) {
  if (std::holds_alternative<kothe::MatrixOperator>(op))
    return std::get<kothe::MatrixOperator>(op);
  return kothe::MatrixOperator::materialize(std::get<kothe::RankOneOperator>(op), rows,
                                            cols);
}

// Re-runnable core: everything the command computed, derived only from the
// embedded inputs. The report stores `inputs` so replay needs no files.
struct Outcome {
  json results;
  int exit_code = kOk;
};

Outcome run_command(const std::string& kind, const json& inputs) {
  using namespace kothe;
  Outcome out;

  if (kind == "validate") {
    KotheMatrix a = io::matrix_from_json(inputs.at("space"));
    json violations = json::array();
    for (const auto& v : a.validate())
      violations.push_back({{"n", v.n}, {"k", v.k}, {"what", v.what}});
    out.results = {{"violations", violations}};
    out.exit_code = violations.empty() ? kOk : kFails;
    return out;
  }

  if (kind == "norm") {
    Space s = io::space_from_json(inputs.at("space"));
    std::vector<double> vals;
    for (const auto& v : inputs.at("vector")) vals.push_back(io::decode_double(v));
    int level = inputs.at("level").get<int>();
    bool dual = inputs.value("dual", false);
    auto x = CoordVector::dense(vals, dual ? CoordVector::Role::Functional
                                           : CoordVector::Role::Element);
    ExtReal value = dual ? dual_seminorm(s.matrix, s.ell, x, level)
                         : seminorm(s.matrix, s.ell, x, level);
    out.results = {{"value", io::encode_double(value.value())}};
    return out;
  }

  if (kind == "opnorm") {
    Space dom = io::space_from_json(inputs.at("dom"));
    Space cod = io::space_from_json(inputs.at("cod"));
    auto op = io::operator_from_json(inputs.at("op"));
    auto t = as_matrix(op, cod.matrix.n_max(), dom.matrix.n_max());
    int m = inputs.at("m").get<int>();
    int k = inputs.at("k").get<int>();
    SamplingEffort effort;
    effort.seed = inputs.value("seed", std::uint64_t{1});
    auto bounds = opnorm_bounds(t, dom, cod, m, k, effort);
    out.results = {{"lower", io::encode_double(bounds.lower.value())},
                   {"upper", io::encode_double(bounds.upper.value())},
                   {"exact", bounds.exact}};
    return out;
  }

  if (kind == "b-pair") {
    KotheMatrix a = io::matrix_from_json(inputs.at("a"));
    KotheMatrix b = io::matrix_from_json(inputs.at("b"));
    SearchBudget budget = io::budget_from_json(inputs.at("budget"));
    const std::string mode = inputs.value("mode", std::string("numeric"));
    json results;
    int code = kOk;
    if (mode == "numeric" || mode == "both") {
      Verdict v = check_b_matrix_pair(a, b, budget);
      results["numeric"] = io::to_json(v);
      code = verdict_exit(v);
    }
    if (mode == "symbolic" || mode == "both") {
      Verdict v = check_b_symbolic(a, b, budget);
      results["symbolic"] = io::to_json(v);
      if (mode == "symbolic") code = verdict_exit(v);
    }
    if (mode == "both")
      results["agreement"] =
          results.at("numeric").at("kind") == results.at("symbolic").at("kind");
    out.results = std::move(results);
    out.exit_code = code;
    return out;
  }

  if (kind == "b-dual") {
    Space s = io::space_from_json(inputs.at("a"));
    SearchBudget budget = io::budget_from_json(inputs.at("budget"));
    auto family = FunctionalFamily::default_for(s, inputs.value("n_random", 8), budget.seed);
    Verdict v = check_b_dual(family, s.matrix, budget);
    out.results = {{"verdict", io::to_json(v)}};
    out.exit_code = verdict_exit(v);
    return out;
  }

  if (kind == "nuclear") {
    KotheMatrix b = io::matrix_from_json(inputs.at("b"));
    SearchBudget budget = io::budget_from_json(inputs.at("budget"));
    int kmax = budget.k_max > 0 ? std::min(budget.k_max, b.k_max()) : b.k_max();
    std::vector<int> nmap;
    if (inputs.contains("nmap"))
      nmap = inputs.at("nmap").get<std::vector<int>>();
    else
      for (int k = 1; k <= kmax; ++k) nmap.push_back(k);
    auto report = check_nuclear(b, nmap, budget);
    out.results = {{"report", io::to_json(report)}};
    out.exit_code = verdict_exit(report.verdict);
    return out;
  }

  if (kind == "bf-ops") {
    Space e = io::space_from_json(inputs.at("e"));
    Space f = io::space_from_json(inputs.at("f"));
    Space g = io::space_from_json(inputs.at("g"));
    auto r_any = io::operator_from_json(inputs.at("r"));
    auto s_any = io::operator_from_json(inputs.at("s"));
    auto r_op = as_matrix(r_any, g.matrix.n_max(), f.matrix.n_max());
    auto s_op = as_matrix(s_any, f.matrix.n_max(), e.matrix.n_max());
    SearchBudget budget = io::budget_from_json(inputs.at("budget"));
    Verdict v = check_bf_operators(r_op, s_op, e, f, g, budget);
    out.results = {{"verdict", io::to_json(v)}};
    out.exit_code = verdict_exit(v);
    return out;
  }

  if (kind == "bf-cond") {
    Space e = io::space_from_json(inputs.at("e"));
    KotheMatrix b = io::matrix_from_json(inputs.at("b"));
    KotheMatrix c = io::matrix_from_json(inputs.at("c"));
    SearchBudget budget = io::budget_from_json(inputs.at("budget"));
    auto family = FunctionalFamily::default_for(e, inputs.value("n_random", 8), budget.seed);
    Verdict v = check_bf_condition(family, b, c, budget);
    out.results = {{"verdict", io::to_json(v)}};
    out.exit_code = verdict_exit(v);
    return out;
  }

  if (kind == "tensor") {
    KotheMatrix a = io::matrix_from_json(inputs.at("a"));
    KotheMatrix b = io::matrix_from_json(inputs.at("b"));
    const std::string pairing = inputs.value("pairing", std::string("diagonal"));
    auto d = KotheMatrix::tensor(
        a, b, pairing == "row-major" ? Pairing::RowMajor : Pairing::Diagonal);
    json pairs = json::array();
    for (int n = 1; n <= d.n_max(); ++n) {
      auto [v, z] = d.tensor_pair(n);
      pairs.push_back({v, z});
    }
    out.results = {{"product", io::to_json(d)}, {"pairs", std::move(pairs)}};
    return out;
  }

  if (kind == "combine") {
    Witness w_ec = io::witness_from_json(inputs.at("w_ec"));
    Witness w_bc = io::witness_from_json(inputs.at("w_bc"));
    auto nmap = inputs.at("nmap").get<std::vector<int>>();
    int kmax = inputs.at("k_max").get<int>();
    Witness combined = combine_witnesses(w_ec, w_bc, nmap, kmax);
    out.results = {{"witness", io::to_json(combined)},
                   {"spliced_map", splice_level_map(nmap, w_bc.n_level, kmax)}};
    return out;
  }

  throw std::runtime_error("unknown command kind '" + kind + "'");
}

json make_report(const std::string& kind, const json& inputs, const Outcome& outcome,
                 double ms) {
  return {{"command", kind},    {"inputs", inputs},   {"results", outcome.results},
          {"exit_code", outcome.exit_code}, {"timing_ms", ms}, {"version", kVersion}};
}

void print_human(const json& report) {
  const json& results = report.at("results");
  auto show_verdict = [](const json& v) {
    std::cout << "verdict: " << v.at("kind").get<std::string>();
    if (!v.at("reason").get<std::string>().empty())
      std::cout << " (" << v.at("reason").get<std::string>() << ")";
    std::cout << "\n  witnesses: " << v.at("witnesses").size()
              << ", counterexamples: " << v.at("counterexamples").size() << "\n";
  };
  if (results.contains("violations")) {
    const auto& viol = results.at("violations");
    if (viol.empty()) {
      std::cout << "valid\n";
    } else {
      for (const auto& v : viol)
        std::cout << "violation at n=" << v.at("n") << " k=" << v.at("k") << ": "
                  << v.at("what").get<std::string>() << "\n";
    }
  }
  if (results.contains("value")) std::cout << "value: " << results.at("value") << "\n";
  if (results.contains("lower"))
    std::cout << "opnorm in [" << results.at("lower") << ", " << results.at("upper")
              << "], exact: " << results.at("exact") << "\n";
  for (const char* key : {"numeric", "symbolic"})
    if (results.contains(key)) {
      std::cout << key << " ";
      show_verdict(results.at(key));
    }
  if (results.contains("agreement"))
    std::cout << "mode agreement: " << (results.at("agreement").get<bool>() ? "yes" : "no")
              << "\n";
  if (results.contains("verdict")) show_verdict(results.at("verdict"));
  if (results.contains("report"))
    show_verdict(results.at("report").at("verdict"));
  if (results.contains("product"))
    std::cout << "tensor product: " << results.at("product").at("n_max") << " rows, "
              << results.at("product").at("k_max") << " levels\n";
  if (results.contains("witness"))
    std::cout << "combined witness: N=" << results.at("witness").at("N") << ", "
              << results.at("witness").at("per_r").size() << " output levels\n";
}

int emit(const std::string& kind, const json& inputs, bool as_json,
         const std::string& out_path) {
  auto start = std::chrono::steady_clock::now();
  Outcome outcome = run_command(kind, inputs);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  json report = make_report(kind, inputs, outcome, ms);
  if (!out_path.empty()) {
    if (kind == "tensor") {
      kothe::io::save_file(out_path, outcome.results.at("product"));
    } else if (kind == "combine") {
      kothe::io::save_file(out_path, outcome.results.at("witness"));
    } else {
      kothe::io::save_file(out_path, report);
    }
  }
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    print_human(report);
  return outcome.exit_code;
}

// Strip the fields that legitimately differ between runs.
json replay_view(json report) {
  report.erase("timing_ms");
  report.erase("version");
  return report;
}

int cmd_replay(const std::string& path, bool as_json) {
  json original = load(path);
  Outcome outcome = run_command(original.at("command").get<std::string>(),
                                original.at("inputs"));
  json fresh = make_report(original.at("command").get<std::string>(),
                           original.at("inputs"), outcome, 0.0);
  bool identical = replay_view(original) == replay_view(fresh);
  if (as_json)
    std::cout << json{{"replay_identical", identical},
                      {"report", fresh}}
                     .dump(2)
              << "\n";
  else
    std::cout << "replay " << (identical ? "identical" : "DIVERGED") << "\n";
  if (!identical) return kFails;
  return outcome.exit_code;
}

struct BudgetFlags {
  int budget_n = 0;
  int budget_k = 0;
  std::string shifts;
  int r_max = 0;
  double c_cap = 0.0;
  std::uint64_t seed = 0;

  json to_inputs() const {
    kothe::SearchBudget b;
    if (budget_n > 0) b.n_range = budget_n;
    if (budget_k > 0) b.k_max = budget_k;
    if (!shifts.empty()) b.shifts = parse_int_list(shifts);
    if (r_max > 0) b.r_range = r_max;
    if (c_cap > 0.0) b.c_cap = c_cap;
    if (seed > 0) b.seed = seed;
    return kothe::io::to_json(b);
  }

  void attach(CLI::App* app) {
    app->add_option("--budget-n", budget_n, "index truncation for v, i, j, n");
    app->add_option("--budget-k", budget_k, "level truncation k_max");
    app->add_option("--shifts", shifts, "comma-separated affine shifts for the map family");
    app->add_option("--r-max", r_max, "largest output level r");
    app->add_option("--c-cap", c_cap, "largest admissible constant C");
    app->add_option("--seed", seed, "seed for all randomness");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated l-Koethe space laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  std::string out_path;
  app.add_flag("--json", as_json, "emit the full JSON report");
  app.add_option("-o,--output", out_path, "output file path");

  // validate
  auto* validate = app.add_subcommand("validate", "check a space definition file");
  std::string validate_path;
  validate->add_option("space", validate_path)->required();

  // norm
  auto* norm = app.add_subcommand("norm", "evaluate a seminorm or dual seminorm");
  std::string norm_space, norm_vector;
  int norm_level = 1;
  bool norm_dual = false;
  norm->add_option("space", norm_space)->required();
  norm->add_option("--vector", norm_vector, "comma-separated coordinates")->required();
  norm->add_option("-k,--level", norm_level);
  norm->add_flag("--dual", norm_dual, "evaluate the dual seminorm");

  // opnorm
  auto* opnorm = app.add_subcommand("opnorm", "certified operator-seminorm interval");
  std::string op_path, op_dom, op_cod;
  int op_m = 1, op_k = 1;
  std::uint64_t op_seed = 1;
  opnorm->add_option("operator", op_path)->required();
  opnorm->add_option("dom", op_dom)->required();
  opnorm->add_option("cod", op_cod)->required();
  opnorm->add_option("-m,--cod-level", op_m);
  opnorm->add_option("-k,--dom-level", op_k);
  opnorm->add_option("--seed", op_seed);

  // check <kind> files...
  auto* check = app.add_subcommand("check", "run a matrix-inequality checker");
  std::string check_kind, check_mode = "numeric";
  std::vector<std::string> check_files;
  std::string check_nmap;
  BudgetFlags check_budget;
  check->add_option("kind", check_kind, "b-pair | b-dual | nuclear | bf-ops | bf-cond")
      ->required();
  check->add_option("files", check_files, "input space/operator files");
  check->add_option("--mode", check_mode, "numeric | symbolic | both");
  check->add_option("--nmap", check_nmap, "comma-separated level map");
  check_budget.attach(check);

  // tensor
  auto* tensor = app.add_subcommand("tensor", "projective tensor weight grid");
  std::string tensor_a, tensor_b, tensor_pairing = "diagonal";
  tensor->add_option("a", tensor_a)->required();
  tensor->add_option("b", tensor_b)->required();
  tensor->add_option("--pairing", tensor_pairing, "diagonal | row-major");

  // combine
  auto* combine = app.add_subcommand("combine", "splice two witnesses");
  std::string combine_ec, combine_bc, combine_nmap;
  int combine_kmax = 0;
  combine->add_option("w_ec", combine_ec)->required();
  combine->add_option("w_bc", combine_bc)->required();
  combine->add_option("--nmap", combine_nmap)->required();
  combine->add_option("--k-max", combine_kmax)->required();

  // replay
  auto* replay = app.add_subcommand("replay", "re-run a report and compare");
  std::string replay_path;
  replay->add_option("report", replay_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (validate->parsed())
      return emit("validate", {{"space", load(validate_path)}}, as_json, out_path);

    if (norm->parsed()) {
      json vec = json::array();
      for (double v : parse_double_list(norm_vector))
        vec.push_back(kothe::io::encode_double(v));
      return emit("norm",
                  {{"space", load(norm_space)},
                   {"vector", std::move(vec)},
                   {"level", norm_level},
                   {"dual", norm_dual}},
                  as_json, out_path);
    }

    if (opnorm->parsed())
      return emit("opnorm",
                  {{"op", load(op_path)},
                   {"dom", load(op_dom)},
                   {"cod", load(op_cod)},
                   {"m", op_m},
                   {"k", op_k},
                   {"seed", op_seed}},
                  as_json, out_path);

    if (check->parsed()) {
      json budget = check_budget.to_inputs();
      auto need = [&](std::size_t n) {
        if (check_files.size() != n)
          throw std::runtime_error("check " + check_kind + " expects " +
                                   std::to_string(n) + " input file(s)");
      };
      if (check_kind == "b-pair") {
        need(2);
        return emit("b-pair",
                    {{"a", load(check_files[0])},
                     {"b", load(check_files[1])},
                     {"budget", budget},
                     {"mode", check_mode}},
                    as_json, out_path);
      }
      if (check_kind == "b-dual") {
        need(1);
        return emit("b-dual", {{"a", load(check_files[0])}, {"budget", budget}}, as_json,
                    out_path);
      }
      if (check_kind == "nuclear") {
        need(1);
        json inputs = {{"b", load(check_files[0])}, {"budget", budget}};
        if (!check_nmap.empty()) inputs["nmap"] = parse_int_list(check_nmap);
        return emit("nuclear", inputs, as_json, out_path);
      }
      if (check_kind == "bf-ops") {
        need(5);
        return emit("bf-ops",
                    {{"r", load(check_files[0])},
                     {"s", load(check_files[1])},
                     {"e", load(check_files[2])},
                     {"f", load(check_files[3])},
                     {"g", load(check_files[4])},
                     {"budget", budget}},
                    as_json, out_path);
      }
      if (check_kind == "bf-cond") {
        need(3);
        return emit("bf-cond",
                    {{"e", load(check_files[0])},
                     {"b", load(check_files[1])},
                     {"c", load(check_files[2])},
                     {"budget", budget}},
                    as_json, out_path);
      }
      throw std::runtime_error("unknown check kind '" + check_kind + "'");
    }

    if (tensor->parsed())
      return emit("tensor",
                  {{"a", load(tensor_a)},
                   {"b", load(tensor_b)},
                   {"pairing", tensor_pairing}},
                  as_json, out_path);

    if (combine->parsed())
      return emit("combine",
                  {{"w_ec", load(combine_ec)},
                   {"w_bc", load(combine_bc)},
                   {"nmap", parse_int_list(combine_nmap)},
                   {"k_max", combine_kmax}},
                  as_json, out_path);

    if (replay->parsed()) return cmd_replay(replay_path, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

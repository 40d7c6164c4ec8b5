#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "kothe/criteria.hpp"
#include "kothe/io.hpp"

using namespace kothe;
using kothe::io::json;

namespace {

KotheMatrix infinite_type(int n, int k) {
  PowerSeriesGenerator gen{PowerSeriesGenerator::Type::Infinite,
                           {PowerSeriesGenerator::AlphaRule::Kind::Linear, 1.0, {}}};
  return KotheMatrix::from_generator(gen, n, k, "ps");
}

}  // namespace

TEST_CASE("double encoding is bit-exact and handles infinities") {
  for (double v : {0.0, 1.0, 1.0 / 3.0, 0.1 + 0.2, 1e-300, 1e300, 5.551115123125783e-17}) {
    auto j = io::encode_double(v);
    CHECK(io::decode_double(j) == v);
    // Through a full serialization cycle as well.
    CHECK(io::decode_double(json::parse(json(j).dump())) == v);
  }
  CHECK(io::decode_double(io::encode_double(kPosInf)) == kPosInf);
  CHECK(io::encode_double(kPosInf).is_string());
  CHECK(io::decode_double(json::parse("\"-inf\"")) == kNegInf);
  CHECK_THROWS(io::encode_double(std::nan("")));
}

TEST_CASE("ell norm round trip") {
  for (auto ell : {EllNorm::l1(), EllNorm::l2(), EllNorm::linf(), EllNorm::c0(),
                   EllNorm::lp(2.5)}) {
    auto back = io::ell_from_json(io::to_json(ell));
    CHECK(back.kind == ell.kind);
    CHECK((std::isinf(back.p) ? std::isinf(ell.p) : back.p == ell.p));
  }
}

TEST_CASE("matrix round trip preserves entries and the generator") {
  auto grid = KotheMatrix::from_grid({{1.0, 2.0}, {0.0, 4.0}}, "g");
  auto grid2 = io::matrix_from_json(io::to_json(grid));
  CHECK(grid2.label() == "g");
  CHECK(grid2.n_max() == 2);
  CHECK(grid2.k_max() == 2);
  for (int n = 1; n <= 2; ++n)
    for (int k = 1; k <= 2; ++k) CHECK(grid2.entry(n, k) == grid.entry(n, k));
  CHECK_FALSE(grid2.generator().has_value());

  auto ps = infinite_type(6, 3);
  auto ps2 = io::matrix_from_json(io::to_json(ps));
  REQUIRE(ps2.generator().has_value());
  CHECK(ps2.generator()->type == PowerSeriesGenerator::Type::Infinite);
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= 3; ++k) CHECK(ps2.entry(n, k) == ps.entry(n, k));

  auto sp = io::space_from_json(io::to_json(Space{ps, EllNorm::l2()}));
  CHECK(sp.ell.p == 2.0);
  CHECK(sp.matrix.n_max() == 6);
}

TEST_CASE("operator round trips") {
  MatrixOperator t({{1.0, -2.0}, {0.5, 0.0}});
  auto any = io::operator_from_json(io::to_json(t));
  REQUIRE(std::holds_alternative<MatrixOperator>(any));
  const auto& t2 = std::get<MatrixOperator>(any);
  CHECK(t2.coef(1, 2) == -2.0);
  CHECK(t2.coef(2, 1) == 0.5);

  RankOneOperator r{CoordVector::functional({{2, 1.5}}), CoordVector::element({{1, -3.0}})};
  auto any2 = io::operator_from_json(io::to_json(r));
  REQUIRE(std::holds_alternative<RankOneOperator>(any2));
  const auto& r2 = std::get<RankOneOperator>(any2);
  CHECK(r2.u[2] == 1.5);
  CHECK(r2.x[1] == -3.0);
}

TEST_CASE("budget, thresholds, and growth class round trips") {
  SearchBudget b;
  b.n_range = 12;
  b.k_max = 3;
  b.shifts = {0, 2};
  b.extra_nmaps = {{1, 1, 3}};
  b.r_range = 2;
  b.c_cap = 1e6;
  b.seed = 77;
  auto b2 = io::budget_from_json(io::to_json(b));
  CHECK(b2.n_range == 12);
  CHECK(b2.k_max == 3);
  CHECK(b2.shifts == b.shifts);
  CHECK(b2.extra_nmaps == b.extra_nmaps);
  CHECK(b2.r_range == 2);
  CHECK(b2.c_cap == 1e6);
  CHECK(b2.seed == 77);

  GrowthThresholds t{0.1, 0.02, 3.0};
  auto t2 = io::thresholds_from_json(io::to_json(t));
  CHECK(t2.bounded_tol == 0.1);
  CHECK(t2.slope_tol == 0.02);
  CHECK(t2.ratio_min == 3.0);

  GrowthClass g;
  g.kind = GrowthClass::Kind::Diverging;
  g.log_slope = kPosInf;
  g.late_max = 4.0;
  auto g2 = io::growth_from_json(io::to_json(g));
  CHECK(g2.kind == GrowthClass::Kind::Diverging);
  CHECK(g2.log_slope == kPosInf);
  CHECK(g2.late_max == 4.0);
}

TEST_CASE("verdict certificates survive the round trip bit-exactly") {
  SearchBudget budget;
  budget.n_range = 12;
  auto ps = infinite_type(12, 3);
  auto fails = check_b_matrix_pair(ps, ps, budget);
  REQUIRE(fails.kind == Verdict::Kind::FailsAtScale);
  auto j1 = io::to_json(fails);
  auto back = io::verdict_from_json(j1);
  CHECK(io::to_json(back) == j1);
  CHECK(back.kind == fails.kind);
  REQUIRE(back.counterexamples.size() == fails.counterexamples.size());
  CHECK(back.counterexamples[0].nmap == fails.counterexamples[0].nmap);
  CHECK(back.counterexamples[0].per_n.size() == fails.counterexamples[0].per_n.size());
  CHECK(back.scope.n_range == 12);

  std::vector<std::vector<double>> rows(12, std::vector<double>(3, 1.0));
  auto flat = KotheMatrix::from_grid(rows);
  std::vector<std::vector<double>> crows(12, std::vector<double>(3));
  for (int n = 0; n < 12; ++n)
    for (int k = 0; k < 3; ++k) crows[n][k] = n + 1.0;
  auto cst = KotheMatrix::from_grid(crows);
  auto holds = check_b_matrix_pair(flat, cst, budget);
  REQUIRE(holds.kind == Verdict::Kind::HoldsAtScale);
  auto j2 = io::to_json(holds);
  auto back2 = io::verdict_from_json(j2);
  CHECK(io::to_json(back2) == j2);
  REQUIRE(back2.witnesses.size() == holds.witnesses.size());
  CHECK(back2.witnesses[0].nmap == holds.witnesses[0].nmap);
  CHECK(back2.witnesses[0].per_r.size() == holds.witnesses[0].per_r.size());
  CHECK(back2.witnesses[0].per_r[0].c == holds.witnesses[0].per_r[0].c);
}

TEST_CASE("nuclearity report round trip") {
  SearchBudget budget;
  budget.n_range = 30;
  auto ps = infinite_type(30, 4);
  auto rep = check_nuclear(ps, {1, 2, 3, 4}, budget);
  auto j = io::to_json(rep);
  auto back = io::nuclearity_from_json(j);
  CHECK(io::to_json(back) == j);
  CHECK(back.nmap == rep.nmap);
  CHECK(back.smap == rep.smap);
  CHECK(back.theta.at(1) == rep.theta.at(1));
  CHECK(back.theta_trajectory.at(2) == rep.theta_trajectory.at(2));
  REQUIRE(back.symbolic_nuclear.has_value());
  CHECK(*back.symbolic_nuclear == *rep.symbolic_nuclear);
}

TEST_CASE("file save and load") {
  std::string path = "/tmp/kothe_io_test.json";
  json j = {{"x", io::encode_double(1.0 / 3.0)}, {"arr", {1, 2, 3}}};
  io::save_file(path, j);
  auto back = io::load_file(path);
  CHECK(back == j);
  std::remove(path.c_str());
  CHECK_THROWS(io::load_file("/tmp/kothe_definitely_missing.json"));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "kothe/space.hpp"

using namespace kothe;

namespace {

KotheMatrix small_grid() {
  // Rows n = 1, 2; levels k = 1, 2.
  return KotheMatrix::from_grid({{1.0, 2.0}, {3.0, 4.0}});
}

}  // namespace

TEST_CASE("extended reals follow the measure-theoretic conventions") {
  CHECK(ExtReal::div(ExtReal(0.0), ExtReal(0.0)).value() == 0.0);
  CHECK(ExtReal::div(ExtReal(1.5), ExtReal(0.0)).value() == kPosInf);
  CHECK(ExtReal::div(ExtReal(1.5), ExtReal::inf()).value() == 0.0);
  CHECK(ExtReal::div(ExtReal(0.0), ExtReal::inf()).value() == 0.0);
  CHECK((ExtReal(0.0) * ExtReal::inf()).value() == 0.0);
  CHECK((ExtReal(2.0) * ExtReal::inf()).value() == kPosInf);
  CHECK(ExtReal::from_log(kNegInf).value() == 0.0);
  CHECK(ExtReal::from_log(0.0).value() == 1.0);
  CHECK_THROWS(ExtReal(-1.0));

  CHECK(log_ratio(kNegInf, kNegInf) == kNegInf);   // 0/0 = 0
  CHECK(log_ratio(0.0, kNegInf) == kPosInf);       // c/0 = inf
  CHECK(log_ratio(0.0, kPosInf) == kNegInf);       // c/inf = 0
  CHECK(log_ratio(kPosInf, kPosInf) == kNegInf);   // inf/inf treated as 0
  CHECK(log_ratio(2.0, 0.5) == doctest::Approx(1.5));
}

TEST_CASE("log-domain lp norms match the direct computation") {
  std::vector<double> ls = {std::log(3.0), std::log(4.0)};
  CHECK(log_lp_norm(ls, 1.0) == doctest::Approx(std::log(7.0)).epsilon(1e-14));
  CHECK(log_lp_norm(ls, 2.0) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(log_lp_norm(ls, kPosInf) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(log_lp_norm({}, 2.0) == kNegInf);
}

TEST_CASE("EllNorm conjugates, names, and parsing") {
  CHECK(EllNorm::l1().conjugate_exponent() == kPosInf);
  CHECK(EllNorm::l2().conjugate_exponent() == doctest::Approx(2.0));
  CHECK(EllNorm::linf().conjugate_exponent() == doctest::Approx(1.0));
  CHECK(EllNorm::c0().conjugate_exponent() == doctest::Approx(1.0));
  CHECK(EllNorm::lp(3.0).conjugate_exponent() == doctest::Approx(1.5));
  for (const char* name : {"l1", "l2", "linf", "c0"})
    CHECK(EllNorm::parse(name).name() == name);
  CHECK(EllNorm::parse("lp:3.5").p == doctest::Approx(3.5));
  CHECK_THROWS(EllNorm::lp(0.5));
  CHECK_THROWS(EllNorm::parse("l7"));
}

TEST_CASE("matrix construction and validation") {
  auto a = small_grid();
  CHECK(a.n_max() == 2);
  CHECK(a.k_max() == 2);
  CHECK(a.entry(2, 1) == 3.0);
  CHECK(a.log_entry(2, 2) == doctest::Approx(std::log(4.0)));
  CHECK(a.validate().empty());
  CHECK_THROWS(a.entry(3, 1));
  CHECK_THROWS(a.entry(1, 0));
  CHECK_THROWS(KotheMatrix::from_grid({}));
  CHECK_THROWS(KotheMatrix::from_grid({{1.0, 2.0}, {1.0}}));

  auto bad_mono = KotheMatrix::from_grid({{2.0, 1.0}});
  auto v1 = bad_mono.validate();
  REQUIRE(v1.size() == 1);
  CHECK(v1[0].what == "not monotone in k");

  auto bad_neg = KotheMatrix::from_grid({{-1.0, 2.0}});
  bool has_neg = false;
  for (const auto& v : bad_neg.validate())
    if (v.what == "negative or NaN entry") has_neg = true;
  CHECK(has_neg);

  auto bad_row = KotheMatrix::from_grid({{0.0, 0.0}, {1.0, 1.0}});
  auto v3 = bad_row.validate();
  REQUIRE(v3.size() == 1);
  CHECK(v3[0].n == 1);
  CHECK(v3[0].k == 0);
  CHECK(v3[0].what == "row has zero sup");

  // A zero weight below a positive one is legal.
  CHECK(KotheMatrix::from_grid({{0.0, 1.0}}).validate().empty());
}

TEST_CASE("power-series generators produce the exponential weights") {
  PowerSeriesGenerator inf_gen{PowerSeriesGenerator::Type::Infinite,
                               {PowerSeriesGenerator::AlphaRule::Kind::Linear, 1.0, {}}};
  auto a = KotheMatrix::from_generator(inf_gen, 5, 3);
  CHECK(a.entry(2, 3) == doctest::Approx(std::exp(6.0)).epsilon(1e-14));
  CHECK(a.log_entry(4, 2) == doctest::Approx(8.0));
  CHECK(a.validate().empty());
  REQUIRE(a.generator().has_value());

  PowerSeriesGenerator fin_gen{PowerSeriesGenerator::Type::Finite,
                               {PowerSeriesGenerator::AlphaRule::Kind::Linear, 1.0, {}}};
  auto b = KotheMatrix::from_generator(fin_gen, 5, 3);
  CHECK(b.log_entry(3, 2) == doctest::Approx(-1.5));
  CHECK(b.validate().empty());  // exp(-alpha/k) is nondecreasing in k

  PowerSeriesGenerator log_gen{PowerSeriesGenerator::Type::Infinite,
                               {PowerSeriesGenerator::AlphaRule::Kind::Log, 2.0, {}}};
  CHECK(log_gen.alpha(3) == doctest::Approx(2.0 * std::log(4.0)));

  PowerSeriesGenerator list_gen{PowerSeriesGenerator::Type::Infinite,
                                {PowerSeriesGenerator::AlphaRule::Kind::List, 1.0,
                                 {0.5, 1.5}}};
  CHECK(list_gen.alpha(2) == doctest::Approx(1.5));
  CHECK_THROWS(list_gen.alpha(3));
  CHECK_THROWS(list_gen.alpha(0));
}

TEST_CASE("coordinate vectors") {
  auto x = CoordVector::dense({1.0, 0.0, -2.0});
  REQUIRE(x.coords.size() == 2);  // zeros dropped
  CHECK(x[1] == 1.0);
  CHECK(x[2] == 0.0);
  CHECK(x[3] == -2.0);
  CHECK(x.max_index() == 3);
  CHECK_FALSE(x.is_zero());
  CHECK(CoordVector::dense({}).is_zero());

  auto u = CoordVector::functional({{1, 2.0}, {3, 1.0}});
  CHECK(u.pair(x) == doctest::Approx(2.0 * 1.0 + 1.0 * -2.0));
  CHECK(CoordVector::basis(2)[2] == 1.0);
  CHECK(CoordVector::coordinate_functional(4).role == CoordVector::Role::Functional);
}

TEST_CASE("seminorm hand values on a 2x2 grid") {
  auto a = small_grid();
  auto x = CoordVector::dense({1.0, -2.0});
  CHECK(seminorm(a, EllNorm::l1(), x, 1).value() == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(seminorm(a, EllNorm::l1(), x, 2).value() == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(seminorm(a, EllNorm::linf(), x, 1).value() == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(seminorm(a, EllNorm::c0(), x, 1).value() == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(seminorm(a, EllNorm::l2(), x, 1).value() ==
        doctest::Approx(std::sqrt(37.0)).epsilon(1e-14));
  CHECK(seminorm(a, EllNorm::lp(3.0), x, 1).value() ==
        doctest::Approx(std::cbrt(1.0 + 216.0)).epsilon(1e-14));
  CHECK_THROWS(seminorm(a, EllNorm::l1(), CoordVector::basis(3), 1));
}

TEST_CASE("dual seminorm closed form") {
  auto a = small_grid();
  auto u = CoordVector::functional({{1, 1.0}, {2, 1.0}});
  // l1 dualizes to sup: max(1/1, 1/3).
  CHECK(dual_seminorm(a, EllNorm::l1(), u, 1).value() == doctest::Approx(1.0).epsilon(1e-14));
  // linf and c0 dualize to l1: 1/1 + 1/3.
  CHECK(dual_seminorm(a, EllNorm::linf(), u, 1).value() ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(dual_seminorm(a, EllNorm::c0(), u, 1).value() ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  // l2 is self-dual.
  CHECK(dual_seminorm(a, EllNorm::l2(), u, 1).value() ==
        doctest::Approx(std::sqrt(1.0 + 1.0 / 9.0)).epsilon(1e-14));

  // A functional sitting on a zero weight has infinite dual norm.
  auto z = KotheMatrix::from_grid({{0.0, 1.0}, {1.0, 1.0}});
  CHECK(dual_seminorm(z, EllNorm::l1(), CoordVector::coordinate_functional(1), 1).value() ==
        kPosInf);
  CHECK(dual_seminorm(z, EllNorm::l1(), CoordVector::coordinate_functional(1), 2).value() ==
        doctest::Approx(1.0));
}

TEST_CASE("log seminorms agree with the linear evaluation") {
  auto a = small_grid();
  auto x = CoordVector::dense({0.3, -1.7});
  auto u = CoordVector::functional({{1, 0.9}, {2, -0.4}});
  for (auto ell : {EllNorm::l1(), EllNorm::l2(), EllNorm::linf(), EllNorm::lp(3.0),
                   EllNorm::c0()})
    for (int k = 1; k <= 2; ++k) {
      CHECK(log_seminorm(a, ell, x, k) ==
            doctest::Approx(seminorm(a, ell, x, k).log()).epsilon(1e-12));
      CHECK(log_dual_seminorm(a, ell, u, k) ==
            doctest::Approx(dual_seminorm(a, ell, u, k).log()).epsilon(1e-12));
    }
}

TEST_CASE("property: duality bracket and level monotonicity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  const std::vector<EllNorm> norms = {EllNorm::l1(), EllNorm::l2(), EllNorm::linf(),
                                      EllNorm::lp(2.5), EllNorm::c0()};
  for (int trial = 0; trial < 50; ++trial) {
    // Random valid 6x3 matrix: cumulative positive increments along k.
    std::vector<std::vector<double>> rows(6, std::vector<double>(3));
    for (auto& row : rows) {
      row[0] = pos(rng);
      for (int k = 1; k < 3; ++k) row[k] = row[k - 1] + pos(rng) - 0.1;
    }
    auto a = KotheMatrix::from_grid(rows);
    REQUIRE(a.validate().empty());
    std::vector<double> xv(6), uv(6);
    for (auto& v : xv) v = unif(rng);
    for (auto& v : uv) v = unif(rng);
    auto x = CoordVector::dense(xv);
    auto u = CoordVector::dense(uv, CoordVector::Role::Functional);
    for (const auto& ell : norms) {
      for (int k = 1; k <= 3; ++k) {
        double nx = seminorm(a, ell, x, k).value();
        double nu = dual_seminorm(a, ell, u, k).value();
        CHECK(std::abs(u.pair(x)) <= nx * nu * (1.0 + 1e-12) + 1e-12);
        if (k < 3) {
          CHECK(seminorm(a, ell, x, k + 1).value() >= nx * (1.0 - 1e-12));
          CHECK(dual_seminorm(a, ell, u, k + 1).value() <= nu * (1.0 + 1e-12));
        }
      }
      // Monotone norm: coordinatewise domination.
      std::vector<double> yv = xv;
      for (auto& v : yv) v *= 0.5;
      CHECK(seminorm(a, ell, CoordVector::dense(yv), 1).value() <=
            seminorm(a, ell, x, 1).value() * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("tensor grids: row-major values and diagonal enumeration") {
  auto a = KotheMatrix::from_grid({{1.0}, {2.0}});
  auto b = KotheMatrix::from_grid({{3.0}, {4.0}});
  auto rm = KotheMatrix::tensor(a, b, Pairing::RowMajor);
  REQUIRE(rm.n_max() == 4);
  CHECK(rm.entry(1, 1) == 3.0);
  CHECK(rm.entry(2, 1) == 4.0);
  CHECK(rm.entry(3, 1) == 6.0);
  CHECK(rm.entry(4, 1) == 8.0);
  CHECK(rm.is_tensor());
  CHECK(rm.tensor_pair(3) == std::pair<int, int>{2, 1});

  auto c = KotheMatrix::from_grid({{1.0}, {2.0}, {3.0}});
  auto diag = KotheMatrix::tensor(a, c, Pairing::Diagonal);
  // Anti-diagonals v + z = 2, 3, 4, 5.
  std::vector<std::pair<int, int>> expect = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {2, 2}, {2, 3}};
  REQUIRE(diag.n_max() == 6);
  for (int n = 1; n <= 6; ++n) CHECK(diag.tensor_pair(n) == expect[n - 1]);
  auto [v, z] = diag.tensor_pair(5);
  CHECK(diag.entry(5, 1) == a.entry(v, 1) * c.entry(z, 1));

  CHECK_THROWS(KotheMatrix::tensor(a, KotheMatrix::from_grid({{1.0, 2.0}}),
                                   Pairing::Diagonal));
  CHECK_THROWS(small_grid().tensor_pair(1));  // not a tensor matrix
}

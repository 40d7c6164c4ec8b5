#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "kothe/operators.hpp"

using namespace kothe;

namespace {

Space l1_space(std::vector<std::vector<double>> rows) {
  return {KotheMatrix::from_grid(std::move(rows)), EllNorm::l1()};
}

}  // namespace

TEST_CASE("matrix operator basics") {
  MatrixOperator t({{1.0, 2.0}, {3.0, 4.0}});
  CHECK(t.domain_dim() == 2);
  CHECK(t.codomain_dim() == 2);
  CHECK(t.coef(2, 1) == 3.0);
  auto col = t.column(2);
  CHECK(col[1] == 2.0);
  CHECK(col[2] == 4.0);
  auto y = t.apply(CoordVector::dense({1.0, 1.0}));
  CHECK(y[1] == doctest::Approx(3.0));
  CHECK(y[2] == doctest::Approx(7.0));
  CHECK_THROWS(t.apply(CoordVector::basis(3)));
  CHECK_THROWS(t.column(0));
  CHECK_THROWS(MatrixOperator({}));
  CHECK_THROWS(MatrixOperator({{1.0, 2.0}, {3.0}}));

  auto id = MatrixOperator::identity(3);
  CHECK(id.coef(2, 2) == 1.0);
  CHECK(id.coef(2, 1) == 0.0);
  CHECK(MatrixOperator::zero(2, 3).domain_dim() == 3);
}

TEST_CASE("rank-one application and materialization") {
  RankOneOperator t{CoordVector::coordinate_functional(1), CoordVector::basis(2)};
  auto y = t.apply(CoordVector::dense({5.0, 9.0}));
  CHECK(y[1] == 0.0);
  CHECK(y[2] == doctest::Approx(5.0));

  auto m = MatrixOperator::materialize(t, 2, 2);
  CHECK(m.coef(2, 1) == 1.0);
  CHECK(m.coef(1, 1) == 0.0);
  auto my = m.apply(CoordVector::dense({5.0, 9.0}));
  CHECK(my[2] == doctest::Approx(5.0));
  CHECK_THROWS(MatrixOperator::materialize(t, 1, 2));  // x lives at index 2
}

TEST_CASE("composition") {
  MatrixOperator r({{1.0, 2.0}, {3.0, 4.0}});
  MatrixOperator s({{5.0, 6.0}, {7.0, 8.0}});
  auto t = compose(r, s);
  CHECK(t.coef(1, 1) == doctest::Approx(19.0));
  CHECK(t.coef(1, 2) == doctest::Approx(22.0));
  CHECK(t.coef(2, 1) == doctest::Approx(43.0));
  CHECK(t.coef(2, 2) == doctest::Approx(50.0));
  CHECK_THROWS(compose(r, MatrixOperator({{1.0, 2.0, 3.0}})));
}

TEST_CASE("rank-one norm formula") {
  auto dom = l1_space({{1.0, 2.0}, {2.0, 4.0}});
  auto cod = dom;
  RankOneOperator t{CoordVector::coordinate_functional(1), CoordVector::basis(2)};
  // ||u||*_q = 1/a_1^q (l1 dual), ||x||_p = a_2^p.
  CHECK(rank_one_norm(t, dom, cod, 1, 2).value() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rank_one_norm(t, dom, cod, 2, 1).value() == doctest::Approx(4.0).epsilon(1e-14));

  // Zero functional times anything is zero, even against a zero weight.
  auto z = l1_space({{0.0, 1.0}});
  RankOneOperator zero_u{CoordVector::functional({}), CoordVector::basis(1)};
  CHECK(rank_one_norm(zero_u, z, z, 2, 1).value() == 0.0);
}

TEST_CASE("exact l1-domain operator seminorm is the column sup") {
  auto dom = l1_space({{1.0, 1.0}, {2.0, 2.0}});
  auto cod = l1_space({{1.0, 1.0}, {1.0, 1.0}});
  MatrixOperator t({{3.0, 0.0}, {0.0, 5.0}});
  // Columns: 3/1 and 5/2.
  CHECK(opnorm_l1_domain(t, dom, cod, 1, 1).value() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS(opnorm_l1_domain(t, {dom.matrix, EllNorm::l2()}, cod, 1, 1));

  auto ratios = log_opnorm_column_ratios(t, dom, cod, 1, 1);
  REQUIRE(ratios.size() == 2);
  CHECK(ratios[0] == doctest::Approx(std::log(3.0)));
  CHECK(ratios[1] == doctest::Approx(std::log(2.5)));
}

TEST_CASE("rank-one norm equals the materialized l1 operator norm") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.2, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<double>> rows(5, std::vector<double>(3));
    for (auto& row : rows) {
      row[0] = pos(rng);
      for (int k = 1; k < 3; ++k) row[k] = row[k - 1] * (1.0 + pos(rng));
    }
    auto dom = l1_space(rows);
    auto cod = dom;
    std::vector<double> uv(5), xv(5);
    for (auto& v : uv) v = unif(rng);
    for (auto& v : xv) v = unif(rng);
    RankOneOperator t{CoordVector::dense(uv, CoordVector::Role::Functional),
                      CoordVector::dense(xv)};
    auto m = MatrixOperator::materialize(t, 5, 5);
    for (int p = 1; p <= 3; ++p)
      for (int q = 1; q <= 3; ++q) {
        double a = rank_one_norm(t, dom, cod, p, q).value();
        double b = opnorm_l1_domain(m, dom, cod, p, q).value();
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
      }
  }
}

TEST_CASE("opnorm bounds: exactness flags and infinite norms") {
  auto dom = l1_space({{1.0}, {2.0}});
  auto cod = l1_space({{1.0}, {1.0}});
  MatrixOperator t({{3.0, 0.0}, {0.0, 5.0}});
  auto b = opnorm_bounds(t, dom, cod, 1, 1);
  CHECK(b.exact);
  CHECK(b.lower.value() == doctest::Approx(3.0));
  CHECK(b.upper.value() == doctest::Approx(3.0));

  // Nonzero column over a zero weight: infinite, certified.
  auto zdom = l1_space({{0.0, 1.0}, {1.0, 1.0}});
  MatrixOperator nz({{1.0, 0.0}, {0.0, 1.0}});
  auto bz = opnorm_bounds(nz, zdom, cod, 1, 1);
  CHECK(bz.exact);
  CHECK(bz.lower.value() == kPosInf);
  CHECK(bz.upper.value() == kPosInf);
}

TEST_CASE("sup-like domains within the sign cap are exact") {
  // linf domain, l1 codomain, diagonal weights: norm = sum |d_n| / a_n.
  auto dom = Space{KotheMatrix::from_grid({{1.0}, {2.0}, {4.0}}), EllNorm::linf()};
  auto cod = l1_space({{1.0}, {1.0}, {1.0}});
  MatrixOperator t({{2.0, 0.0, 0.0}, {0.0, 3.0, 0.0}, {0.0, 0.0, 8.0}});
  auto b = opnorm_bounds(t, dom, cod, 1, 1);
  CHECK(b.exact);
  CHECK(b.lower.value() == doctest::Approx(2.0 / 1.0 + 3.0 / 2.0 + 8.0 / 4.0).epsilon(1e-12));
  // c0 evaluates identically on finitely supported vectors.
  auto bc = opnorm_bounds(t, {dom.matrix, EllNorm::c0()}, cod, 1, 1);
  CHECK(bc.exact);
  CHECK(bc.lower.value() == doctest::Approx(b.lower.value()).epsilon(1e-12));
}

TEST_CASE("l2 domain: certified bracket around the spectral norm") {
  // Unweighted l2 -> l2: the operator norm is the largest singular value.
  std::vector<std::vector<double>> coef = {{2.0, 1.0, 0.0, 0.0},
                                           {1.0, 3.0, 1.0, 0.0},
                                           {0.0, 1.0, 2.0, 1.0},
                                           {0.0, 0.0, 1.0, 4.0}};
  MatrixOperator t(coef);
  auto flat = KotheMatrix::from_grid({{1.0}, {1.0}, {1.0}, {1.0}});
  Space dom{flat, EllNorm::l2()}, cod{flat, EllNorm::l2()};

  // Independent oracle: power iteration on T^T T.
  std::vector<double> v = {1.0, 0.7, -0.3, 0.2};
  double sigma = 0.0;
  for (int it = 0; it < 4000; ++it) {
    std::vector<double> w(4, 0.0), z(4, 0.0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) w[i] += coef[i][j] * v[j];
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) z[j] += coef[i][j] * w[i];
    double nz = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3]);
    for (int j = 0; j < 4; ++j) v[j] = z[j] / nz;
    sigma = std::sqrt(nz);
  }

  auto b = opnorm_bounds(t, dom, cod, 1, 1, {800, 4, 5});
  CHECK(b.lower.value() <= sigma * (1.0 + 1e-9));
  CHECK(b.upper.value() >= sigma * (1.0 - 1e-9));
  CHECK(b.lower.value() >= sigma * 0.95);  // the sampler should get close

  // Diagonal case: the column ratios already give the exact lower bound.
  MatrixOperator d({{5.0, 0.0, 0.0, 0.0},
                    {0.0, 1.0, 0.0, 0.0},
                    {0.0, 0.0, 2.0, 0.0},
                    {0.0, 0.0, 0.0, 3.0}});
  auto bd = opnorm_bounds(d, dom, cod, 1, 1);
  CHECK(bd.lower.value() >= 5.0 * (1.0 - 1e-12));
  CHECK(bd.upper.value() >= bd.lower.value());
}

TEST_CASE("sampled lower bound: monotone in sample count at fixed seed") {
  auto grid = KotheMatrix::from_grid({{1.0}, {2.0}, {3.0}, {4.0}, {5.0}});
  Space dom{grid, EllNorm::l2()}, cod{grid, EllNorm::l2()};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::vector<double>> coef(5, std::vector<double>(5));
  for (auto& row : coef)
    for (auto& c : row) c = unif(rng);
  MatrixOperator t(coef);
  double small = sampled_opnorm_lower(t, dom, cod, 1, 1, {100, 3, 42}).value();
  double large = sampled_opnorm_lower(t, dom, cod, 1, 1, {400, 3, 42}).value();
  CHECK(large >= small * (1.0 - 1e-12));
  // Deterministic across repeated runs.
  double again = sampled_opnorm_lower(t, dom, cod, 1, 1, {100, 3, 42}).value();
  CHECK(again == small);
}

TEST_CASE("l1 operator norms are submultiplicative under composition") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.2, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::vector<double>> rows(4, std::vector<double>(2));
    for (auto& row : rows) {
      row[0] = pos(rng);
      row[1] = row[0] * (1.0 + pos(rng));
    }
    auto s1 = l1_space(rows);
    std::vector<std::vector<double>> rc(4, std::vector<double>(4)),
        sc(4, std::vector<double>(4));
    for (auto& row : rc)
      for (auto& c : row) c = unif(rng);
    for (auto& row : sc)
      for (auto& c : row) c = unif(rng);
    MatrixOperator r(rc), s(sc);
    auto t = compose(r, s);
    for (int m = 1; m <= 2; ++m)
      for (int k = 1; k <= 2; ++k)
        for (int j = 1; j <= 2; ++j) {
          double lhs = opnorm_l1_domain(t, s1, s1, m, k).value();
          double rhs = opnorm_l1_domain(r, s1, s1, m, j).value() *
                       opnorm_l1_domain(s, s1, s1, j, k).value();
          CHECK(lhs <= rhs * (1.0 + 1e-12));
        }
  }
}

#include "kothe/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace kothe {

MatrixOperator::MatrixOperator(std::vector<std::vector<double>> coef) : coef_(std::move(coef)) {
  codomain_dim_ = static_cast<int>(coef_.size());
  if (codomain_dim_ == 0) throw std::invalid_argument("MatrixOperator: empty grid");
  domain_dim_ = static_cast<int>(coef_[0].size());
  for (const auto& row : coef_)
    if (static_cast<int>(row.size()) != domain_dim_)
      throw std::invalid_argument("MatrixOperator: ragged grid");
}

MatrixOperator MatrixOperator::identity(int n) {
  std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) c[i][i] = 1.0;
  return MatrixOperator(std::move(c));
}

MatrixOperator MatrixOperator::zero(int rows, int cols) {
  return MatrixOperator(std::vector<std::vector<double>>(rows, std::vector<double>(cols, 0.0)));
}

MatrixOperator MatrixOperator::materialize(const RankOneOperator& t, int codomain_dim,
                                           int domain_dim) {
  auto m = zero(codomain_dim, domain_dim);
  for (const auto& [v, xv] : t.x.coords)
    for (const auto& [i, ui] : t.u.coords) {
      if (v > codomain_dim || i > domain_dim)
        throw std::out_of_range("materialize: coordinate outside the grid");
      m.coef(v, i) = xv * ui;
    }
  return m;
}

CoordVector MatrixOperator::column(int i) const {
  if (i < 1 || i > domain_dim_) throw std::out_of_range("column index out of range");
  std::vector<std::pair<int, double>> c;
  for (int v = 1; v <= codomain_dim_; ++v)
    if (coef(v, i) != 0.0) c.emplace_back(v, coef(v, i));
  return CoordVector::element(std::move(c));
}

CoordVector MatrixOperator::apply(const CoordVector& x) const {
  if (x.max_index() > domain_dim_)
    throw std::invalid_argument("apply: dimension mismatch");
  std::vector<std::pair<int, double>> out;
  for (int v = 1; v <= codomain_dim_; ++v) {
    double s = 0.0;
    for (const auto& [i, xv] : x.coords) s += coef(v, i) * xv;
    if (s != 0.0) out.emplace_back(v, s);
  }
  return CoordVector::element(std::move(out));
}

CoordVector RankOneOperator::apply(const CoordVector& z) const {
  double s = u.pair(z);
  std::vector<std::pair<int, double>> out;
  for (const auto& [v, xv] : x.coords)
    if (s * xv != 0.0) out.emplace_back(v, s * xv);
  return CoordVector::element(std::move(out));
}

MatrixOperator compose(const MatrixOperator& r, const MatrixOperator& s) {
  if (r.domain_dim() != s.codomain_dim())
    throw std::invalid_argument("compose: inner dimensions differ");
  auto t = MatrixOperator::zero(r.codomain_dim(), s.domain_dim());
  for (int j = 1; j <= r.codomain_dim(); ++j)
    for (int i = 1; i <= s.domain_dim(); ++i) {
      double acc = 0.0;
      for (int m = 1; m <= r.domain_dim(); ++m) acc += r.coef(j, m) * s.coef(m, i);
      t.coef(j, i) = acc;
    }
  return t;
}

ExtReal rank_one_norm(const RankOneOperator& t, const Space& dom, const Space& cod,
                      int p, int q) {
  return dual_seminorm(dom.matrix, dom.ell, t.u, q) * seminorm(cod.matrix, cod.ell, t.x, p);
}

ExtReal opnorm_l1_domain(const MatrixOperator& t, const Space& dom, const Space& cod,
                         int m, int k) {
  if (!dom.ell.is_l1())
    throw std::invalid_argument("opnorm_l1_domain: domain norm must be l1");
  if (t.domain_dim() > dom.matrix.n_max() || t.codomain_dim() > cod.matrix.n_max())
    throw std::invalid_argument("opnorm_l1_domain: dimension mismatch");
  ExtReal sup(0.0);
  for (int n = 1; n <= t.domain_dim(); ++n) {
    ExtReal num = seminorm(cod.matrix, cod.ell, t.column(n), m);
    ExtReal ratio = ExtReal::div(num, ExtReal(dom.matrix.entry(n, k)));
    sup = std::max(sup, ratio);
  }
  return sup;
}

std::vector<double> log_opnorm_column_ratios(const MatrixOperator& t, const Space& dom,
                                             const Space& cod, int m, int k) {
  std::vector<double> out;
  out.reserve(t.domain_dim());
  for (int n = 1; n <= t.domain_dim(); ++n)
    out.push_back(log_ratio(log_seminorm(cod.matrix, cod.ell, t.column(n), m),
                            dom.matrix.log_entry(n, k)));
  return out;
}

namespace {

ExtReal image_norm(const MatrixOperator& t, const Space& cod, const std::vector<double>& x,
                   int m) {
  CoordVector xv = CoordVector::dense(x);
  return seminorm(cod.matrix, cod.ell, t.apply(xv), m);
}

ExtReal domain_norm(const Space& dom, const EllNorm& ell, const std::vector<double>& x, int k) {
  return seminorm(dom.matrix, ell, CoordVector::dense(x), k);
}

}  // namespace

ExtReal sampled_opnorm_lower(const MatrixOperator& t, const Space& dom, const Space& cod,
                             int m, int k, const SamplingEffort& effort) {
  const int dim = t.domain_dim();
  std::mt19937_64 rng(effort.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ExtReal best(0.0);
  for (int s = 0; s < effort.samples; ++s) {
    std::vector<double> x(dim);
    for (double& xi : x) xi = normal(rng);
    // Zero out coordinates the domain seminorm cannot see.
    for (int n = 1; n <= dim; ++n)
      if (dom.matrix.entry(n, k) == 0.0) x[n - 1] = 0.0;
    ExtReal nx = domain_norm(dom, dom.ell, x, k);
    if (nx.zero() || !nx.finite()) continue;
    for (double& xi : x) xi /= nx.value();
    ExtReal val = image_norm(t, cod, x, m);
    // Deterministic coordinate-ascent refinement.
    double step = 0.5;
    for (int round = 0; round < effort.ascent_rounds; ++round, step *= 0.2) {
      for (int n = 0; n < dim; ++n) {
        for (double d : {step, -step}) {
          std::vector<double> y = x;
          y[n] += d;
          ExtReal ny = domain_norm(dom, dom.ell, y, k);
          if (ny.zero() || !ny.finite()) continue;
          for (double& yi : y) yi /= ny.value();
          ExtReal v = image_norm(t, cod, y, m);
          if (v > val) {
            val = v;
            x = y;
          }
        }
      }
    }
    best = std::max(best, val);
  }
  return best;
}

OpNormBounds opnorm_bounds(const MatrixOperator& t, const Space& dom, const Space& cod,
                           int m, int k, const SamplingEffort& effort) {
  const int dim = t.domain_dim();
  auto col_logs = log_opnorm_column_ratios(t, dom, cod, m, k);
  // A nonzero column on a zero weight makes the norm infinite outright.
  for (double l : col_logs)
    if (l == kPosInf) return {ExtReal::inf(), ExtReal::inf(), true};

  double pprime = dom.ell.conjugate_exponent();
  ExtReal upper = ExtReal::from_log(log_lp_norm(col_logs, pprime));

  ExtReal lower(0.0);
  for (double l : col_logs) lower = std::max(lower, ExtReal::from_log(l));

  if (dom.ell.is_l1()) {
    // Hoelder with p' = inf coincides with the column sup: exact.
    return {lower, lower, true};
  }

  if (dom.ell.is_sup_like() && dim <= kSignEnumerationCap) {
    // Extreme points of the weighted sup ball are sign patterns +-1/a_n^k;
    // the image norm is convex, so the max over them is the exact value.
    std::vector<double> x(dim, 0.0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dim); ++mask) {
      for (int n = 0; n < dim; ++n) {
        double a = dom.matrix.entry(n + 1, k);
        if (a == 0.0 || !std::isfinite(a)) {
          x[n] = 0.0;  // zero weight: unbounded direction handled above
          continue;
        }
        x[n] = ((mask >> n) & 1 ? 1.0 : -1.0) / a;
      }
      lower = std::max(lower, image_norm(t, cod, x, m));
    }
    return {lower, lower, true};
  }

  lower = std::max(lower, sampled_opnorm_lower(t, dom, cod, m, k, effort));
  bool exact = upper.value() <= lower.value() * (1.0 + 1e-9);
  return {lower, upper, exact};
}

}  // namespace kothe

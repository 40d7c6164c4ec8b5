#pragma once

#include <cstdint>
#include <vector>

#include "kothe/space.hpp"

namespace kothe {

struct RankOneOperator;

/// Dense coefficient grid u_{vi}; v = output row, i = input column.
class MatrixOperator {
 public:
  MatrixOperator(std::vector<std::vector<double>> coef);
  static MatrixOperator identity(int n);
  static MatrixOperator zero(int rows, int cols);
  static MatrixOperator materialize(const RankOneOperator& t, int codomain_dim,
                                    int domain_dim);

  int domain_dim() const { return domain_dim_; }
  int codomain_dim() const { return codomain_dim_; }
  double coef(int v, int i) const { return coef_[v - 1][i - 1]; }
  double& coef(int v, int i) { return coef_[v - 1][i - 1]; }

  CoordVector column(int i) const;
  CoordVector apply(const CoordVector& x) const;

 private:
  int domain_dim_ = 0;
  int codomain_dim_ = 0;
  std::vector<std::vector<double>> coef_;  // [v-1][i-1]
};

/// T = u (x) x : z -> u(z) x. Kept factored so the exact norm formula
/// |T|_{p,q} = ||u||*_q ||x||_p stays a formula, not an estimate.
struct RankOneOperator {
  CoordVector u;  // functional
  CoordVector x;  // element

  CoordVector apply(const CoordVector& z) const;
};

struct OpNormBounds {
  ExtReal lower;
  ExtReal upper;
  bool exact = false;
};

struct SamplingEffort {
  int samples = 400;
  int ascent_rounds = 3;
  std::uint64_t seed = 1;
};

MatrixOperator compose(const MatrixOperator& r, const MatrixOperator& s);

/// |T|_{p,q} = ||u||*_q ||x||_p with 0 * inf = 0.
ExtReal rank_one_norm(const RankOneOperator& t, const Space& dom, const Space& cod,
                      int p, int q);

/// Exact operator seminorm for l1 domains: sup over columns n of
/// ||T e_n||_m / a_n^k. Rejects non-l1 domain norms.
ExtReal opnorm_l1_domain(const MatrixOperator& t, const Space& dom, const Space& cod,
                         int m, int k);

/// Per-column log ratios log ||T e_n||_m - log a_n^k, n = 1..domain_dim.
std::vector<double> log_opnorm_column_ratios(const MatrixOperator& t, const Space& dom,
                                             const Space& cod, int m, int k);

/// Deterministic seeded lower bound: random points of the level-k unit
/// ball with coordinate-ascent refinement. With the same seed, a larger
/// sample count explores a superset of the smaller run's candidates.
ExtReal sampled_opnorm_lower(const MatrixOperator& t, const Space& dom, const Space& cod,
                             int m, int k, const SamplingEffort& effort);

/// Certified interval for |T|_{m,k}: Hoelder upper bound, sampled lower
/// bound; exact for l1 domains and for sup-like domains within the sign
/// enumeration cap.
OpNormBounds opnorm_bounds(const MatrixOperator& t, const Space& dom, const Space& cod,
                           int m, int k, const SamplingEffort& effort = {});

inline constexpr int kSignEnumerationCap = 16;

}  // namespace kothe

#pragma once

#include <span>

#include "kothe/certificates.hpp"
#include "kothe/operators.hpp"

namespace kothe {

/// Classifier thresholds; surfaced in reports so every verdict is auditable.
struct GrowthThresholds {
  double bounded_tol = 0.05;  // late max <= (1+tol) * early max
  double slope_tol = 0.01;    // least-squares slope of log(value) vs index
  double ratio_min = 2.0;     // late/early max ratio required for Diverging
};

/// Early/late window split; the late window is the last quarter. Requires
/// at least 8 samples.
GrowthClass classify_growth(std::span<const double> samples,
                            const GrowthThresholds& thr = {});

/// Sign vector of +-1 entries; the monotone-norm suprema over |beta_n| <= 1
/// attain at these vertices in the real case.
struct SignPattern {
  std::vector<int> signs;  // +-1
};

struct BruteNorm {
  ExtReal value;
  bool exact = false;  // exact only for l1 / sup-like domains within the cap
};

/// Independent lower-bound/exact baseline for |T|_{m,k}. l1 domain: exact
/// max over weighted ball vertices. Sup-like domain (dim <= 16): exact max
/// over sign patterns. Otherwise a dense sampled lower bound.
BruteNorm brute_opnorm(const MatrixOperator& t, const Space& dom, const Space& cod,
                       int m, int k, int density = 4000, std::uint64_t seed = 1);

/// Ground truth for the matrix-pair inequality on tiny instances:
/// exhaustive enumeration over all nondecreasing level maps. Refuses
/// budgets above n_range 8 / k_max 4.
Verdict brute_force_condition(const KotheMatrix& a, const KotheMatrix& b,
                              const SearchBudget& budget,
                              const GrowthThresholds& thr = {});

/// All nondecreasing maps {1..k_max} -> {1..k_max}.
std::vector<std::vector<int>> all_nondecreasing_maps(int k_max);

}  // namespace kothe

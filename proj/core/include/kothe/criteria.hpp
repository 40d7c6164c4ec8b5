#pragma once

#include <array>
#include <optional>
#include <span>

#include "kothe/certificates.hpp"
#include "kothe/operators.hpp"
#include "kothe/oracle.hpp"

namespace kothe {

// ---------------------------------------------------------------------------
// Continuity and boundedness of a single operator between truncated spaces.

/// Least level map N(k) whose column-ratio trajectories classify Bounded,
/// with the recorded bounds M(k).
ContinuityWitness continuity_witness(const MatrixOperator& t, const Space& dom,
                                     const Space& cod, const SearchBudget& budget);
ContinuityWitness continuity_witness(const RankOneOperator& t, const Space& dom,
                                     const Space& cod, const SearchBudget& budget);

/// Searches a single input level N serving every output level r.
Verdict boundedness_witness(const MatrixOperator& t, const Space& dom, const Space& cod,
                            const SearchBudget& budget);
Verdict boundedness_witness(const RankOneOperator& t, const Space& dom, const Space& cod,
                            const SearchBudget& budget);

// ---------------------------------------------------------------------------
// The uniform operator-norm inequality behind the pair class.

struct VogtReport {
  double max_ratio = 0.0;  // <= 1 confirms the bound at scale
  bool inconclusive = false;
  int worst_operator = -1;
};

/// max over the family of |T|_{r,N} / (C max_{k<=k0} |T|_{k,N(k)}), exact
/// for l1 domains, conservative interval bounds otherwise.
VogtReport vogt_inequality_check(std::span<const MatrixOperator> family, const Space& dom,
                                 const Space& cod, const Witness& witness, int r);

// ---------------------------------------------------------------------------
// Matrix-pair condition (numeric and symbolic modes).

/// Quantifier search for b_v^r / a_i^N <= C max_{k<=k0} b_v^k / a_i^{N(k)}.
Verdict check_b_matrix_pair(const KotheMatrix& a, const KotheMatrix& b,
                            const SearchBudget& budget, const GrowthThresholds& thr = {});

/// Homogeneous linear form s_coef*s + t_coef*t on the nonnegative quadrant.
struct LinearForm2 {
  double s_coef = 0.0;
  double t_coef = 0.0;
  double eval(double s, double t) const { return s_coef * s + t_coef * t; }
};

/// Decides whether min_k L_k is bounded above on the quadrant. Bounded:
/// `support` lists the candidate points (breakpoints and endpoints of the
/// s + t = 1 cross-section) with their min values, all <= 0. Unbounded:
/// `feasible_ray` is a direction where every form is positive.
struct QuadrantMinCheck {
  bool bounded_above = false;
  std::array<double, 2> feasible_ray{0.0, 0.0};
  std::vector<std::pair<double, double>> support;  // (s on cross-section, min value)
};
QuadrantMinCheck quadrant_min_bounded(std::span<const LinearForm2> forms);

/// Exact LP-mode verdict for generator-backed pairs: exponents are modeled
/// as ranging over the whole nonnegative quadrant, turning each
/// "exists finite C" into a two-variable feasibility question.
Verdict check_b_symbolic(const KotheMatrix& a, const KotheMatrix& b,
                         const SearchBudget& budget);

// ---------------------------------------------------------------------------
// Dual condition over a functional family.

/// Quantifier search for a_v^r ||u||*_N <= C max_{k<=k0} a_v^k ||u||*_{N(k)}.
Verdict check_b_dual(const FunctionalFamily& family, const KotheMatrix& a,
                     const SearchBudget& budget, const GrowthThresholds& thr = {});

// ---------------------------------------------------------------------------
// Nuclearity and the norm-system collapse.

NuclearityReport check_nuclear(const KotheMatrix& b, const std::vector<int>& nmap,
                               const SearchBudget& budget, const GrowthThresholds& thr = {});

/// Two-sided estimate collapsing the l1 and sup norm systems on random
/// vectors; returns the max ratio (must be <= 1 + tolerance).
double norm_system_equivalence_check(const KotheMatrix& b, const NuclearityReport& report,
                                     const SearchBudget& budget, int n_vectors = 100);

inline KotheMatrix tensor_product(const KotheMatrix& a, const KotheMatrix& b,
                                  Pairing pairing = Pairing::Diagonal) {
  return KotheMatrix::tensor(a, b, pairing);
}

// ---------------------------------------------------------------------------
// Bounded factorization.

/// Factor-norm product inequality for a concrete pair T = R o S through
/// E -> F -> G.
Verdict check_bf_operators(const MatrixOperator& r_op, const MatrixOperator& s_op,
                           const Space& e, const Space& f, const Space& g,
                           const SearchBudget& budget);

/// Quantifier search for
/// c_j^r ||u||*_N <= C max_k {||u||*_{N(k)} b_i^k} max_k {c_j^k / b_i^{N(k)}}.
/// Warns (does not refuse) when `nuclear` failed at scale.
Verdict check_bf_condition(const FunctionalFamily& family, const KotheMatrix& b,
                           const KotheMatrix& c, const SearchBudget& budget,
                           const NuclearityReport* nuclear = nullptr,
                           const GrowthThresholds& thr = {});

/// Pointwise replay of a witness against the same inequality; returns the
/// max over the budget of LHS / (C * RHS), <= 1 when the witness is valid.
double verify_bf_condition(const FunctionalFamily& family, const KotheMatrix& b,
                           const KotheMatrix& c, const Witness& witness,
                           const SearchBudget& budget);

/// S(k) = N(n) for k <= n, max(N(k)+1, N(n)) capped at k_max above n.
std::vector<int> splice_level_map(const std::vector<int>& nmap, int n, int k_max);

/// Splices the two witnesses of the tensor factorization proof: w_ec must
/// answer splice_level_map(nmap, w_bc.n_level, k_max).
Witness combine_witnesses(const Witness& w_ec, const Witness& w_bc,
                          const std::vector<int>& nmap, int k_max);

const Witness* find_witness(const Verdict& verdict, const std::vector<int>& nmap);

}  // namespace kothe

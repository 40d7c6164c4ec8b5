#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kothe/space.hpp"

namespace kothe {

/// Finite quantifier budget: every verdict is scoped to it. The adversarial
/// level maps are the nondecreasing affine shifts N(k) = min(k + s, k_max)
/// plus any explicitly pre-registered maps.
struct SearchBudget {
  int n_range = 24;
  int k_max = 0;  // 0: resolved from the spaces at check time
  std::vector<int> shifts = {0, 1, 2};
  std::vector<std::vector<int>> extra_nmaps;
  int r_range = 0;   // 0: resolved to k_max
  int k0_max = 0;    // 0: resolved to k_max
  double c_cap = 1e12;
  std::uint64_t seed = 1;

  int resolved_r_range(int kmax) const { return r_range > 0 ? std::min(r_range, kmax) : kmax; }
  int resolved_k0_max(int kmax) const { return k0_max > 0 ? std::min(k0_max, kmax) : kmax; }
  /// Candidate maps, all nondecreasing with values in 1..kmax.
  std::vector<std::vector<int>> nmap_family(int kmax) const;
};

enum class CheckMode { Numeric, Symbolic };

struct PerR {
  int r = 0;
  int k0 = 0;
  double c = 0.0;  // the budgeted sup, never a searched parameter
};

/// Answers one adversarial map: the level N and, per output level r, the
/// (k0, C) pair certifying the inequality over the budgeted index ranges.
struct Witness {
  std::vector<int> nmap;
  int n_level = 0;
  std::vector<PerR> per_r;
  CheckMode mode = CheckMode::Numeric;

  const PerR& at_r(int r) const;
};

struct RatioSample {
  int prefix = 0;           // trajectory position (index-box size)
  std::vector<int> indices; // witnessing indices at this prefix
  double value = 0.0;
};

/// Window statistics of the growth classifier; thresholds are surfaced so
/// every Inconclusive is auditable.
struct GrowthClass {
  enum class Kind { Bounded, Diverging, Inconclusive };
  Kind kind = Kind::Inconclusive;
  double estimate = 0.0;   // Bounded: max over the final window
  double log_slope = 0.0;  // Diverging only
  double early_max = 0.0;
  double late_max = 0.0;
  int window = 0;
};

struct FailedCandidate {
  int n_level = 0;
  int r = 0;
  std::vector<RatioSample> samples;
  GrowthClass growth;
};

/// Replayable refutation: for each candidate N, an r whose ratio trajectory
/// diverges or exceeds the cap.
struct Counterexample {
  std::vector<int> nmap;
  std::vector<FailedCandidate> per_n;
};

struct Verdict {
  enum class Kind { HoldsAtScale, FailsAtScale, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::vector<Witness> witnesses;            // Holds: one per adversarial map
  std::vector<Counterexample> counterexamples;
  std::string reason;
  SearchBudget scope;
  CheckMode mode = CheckMode::Numeric;

  bool holds() const { return kind == Kind::HoldsAtScale; }
  bool fails() const { return kind == Kind::FailsAtScale; }
};

/// Grothendieck-Pietsch test data: S(k) > N(k) and the theta(k) partial-sum
/// trajectories.
struct NuclearityReport {
  std::vector<int> nmap;
  std::vector<int> smap;                       // 0 where no admissible level exists
  std::map<int, std::vector<double>> theta_trajectory;
  std::map<int, double> theta;                 // final partial sums
  std::map<int, GrowthClass> growth;
  Verdict verdict;
  // Exponent-space shortcut, only for generator-backed matrices.
  std::optional<bool> symbolic_nuclear;
  std::string note;
};

struct ContinuityWitness {
  bool found = false;
  std::vector<int> nmap;
  std::vector<double> bound_per_level;  // M(k)
  Verdict verdict;                      // failure/inconclusive details when !found
};

/// Operational stand-in for E': a finite family of functionals with the
/// space defining their dual seminorms.
struct FunctionalFamily {
  std::vector<CoordVector> functionals;
  Space space;

  /// All coordinate functionals plus `n_random` seeded dense functionals.
  static FunctionalFamily default_for(Space space, int n_random, std::uint64_t seed);
  static FunctionalFamily coordinate_functionals(Space space);
};

}  // namespace kothe

#include "kothe/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace kothe {

namespace {

struct TrajectoryResult {
  std::vector<RatioSample> samples;
  GrowthClass growth;
  double final_sup = 0.0;
};

GrowthClass classify_values(const std::vector<double>& vals, const GrowthThresholds& thr) {
  if (vals.size() >= 8) return classify_growth(vals, thr);
  // Too few points to assess growth; a finite sup on a 1-2 row truncation
  // is all there is to see.
  GrowthClass g;
  g.window = static_cast<int>(vals.size());
  g.late_max = g.estimate = vals.empty() ? 0.0 : vals.back();
  g.kind = std::isfinite(g.estimate) ? GrowthClass::Kind::Bounded
                                     : GrowthClass::Kind::Diverging;
  return g;
}

void classify_trajectory(TrajectoryResult& tr, const GrowthThresholds& thr) {
  std::vector<double> vals;
  vals.reserve(tr.samples.size());
  for (const auto& s : tr.samples) vals.push_back(s.value);
  tr.growth = classify_values(vals, thr);
  tr.final_sup = vals.empty() ? 0.0 : vals.back();
}

double from_log(double l) { return l == kNegInf ? 0.0 : std::exp(l); }

// Running sup over growing index boxes (v <= min(t, n1), i <= min(t, n2)).
// Square prefixes give one sample per t; below 8 the Cantor enumeration of
// pairs supplies enough samples for the classifier.
TrajectoryResult pair_sup_trajectory(int n1, int n2,
                                     const std::function<double(int, int)>& log_ratio_fn,
                                     const GrowthThresholds& thr) {
  TrajectoryResult tr;
  double sup = kNegInf;
  int bv = 1, bi = 1;
  const int t_max = std::max(n1, n2);
  if (t_max >= 8) {
    for (int t = 1; t <= t_max; ++t) {
      for (int v = 1; v <= std::min(t, n1); ++v)
        for (int i = 1; i <= std::min(t, n2); ++i) {
          if (v < t && i < t) continue;  // only the new shell
          double r = log_ratio_fn(v, i);
          if (r > sup) { sup = r; bv = v; bi = i; }
        }
      tr.samples.push_back({t, {bv, bi}, from_log(sup)});
    }
  } else {
    int pos = 0;
    for (int d = 2; d <= n1 + n2; ++d)
      for (int v = std::max(1, d - n2); v < d && v <= n1; ++v) {
        int i = d - v;
        double r = log_ratio_fn(v, i);
        if (r > sup) { sup = r; bv = v; bi = i; }
        ++pos;
        tr.samples.push_back({pos, {bv, bi}, from_log(sup)});
      }
  }
  classify_trajectory(tr, thr);
  return tr;
}

TrajectoryResult seq_sup_trajectory(int n, const std::function<double(int)>& log_ratio_fn,
                                    const GrowthThresholds& thr) {
  TrajectoryResult tr;
  double sup = kNegInf;
  int best = 1;
  for (int v = 1; v <= n; ++v) {
    double r = log_ratio_fn(v);
    if (r > sup) { sup = r; best = v; }
    tr.samples.push_back({v, {best}, from_log(sup)});
  }
  classify_trajectory(tr, thr);
  return tr;
}

// The shared quantifier skeleton: for every adversarial map, search N; for
// each r the least k0 whose ratio trajectory classifies Bounded within the
// cap. The cell callback evaluates one (nmap, N, r, k0) trajectory.
using CellFn =
    std::function<TrajectoryResult(const std::vector<int>&, int, int, int)>;

Verdict quantifier_search(const SearchBudget& budget, int kmax,
                          const std::vector<std::vector<int>>& maps, const CellFn& cell,
                          CheckMode mode) {
  const int r_range = budget.resolved_r_range(kmax);
  const int k0_cap = budget.resolved_k0_max(kmax);
  // The witness level must be stress-tested by some r > N; a witness at the
  // truncation edge would only certify the clipped statement.
  const int n_cap = std::max(kmax - 1, 1);

  Verdict verdict;
  verdict.scope = budget;
  verdict.mode = mode;

  bool all_witnessed = true;
  for (const auto& nmap : maps) {
    bool witnessed = false;
    Counterexample cex;
    cex.nmap = nmap;
    bool all_n_refuted = true;
    Witness w;
    w.nmap = nmap;
    w.mode = mode;
    for (int n_level = 1; n_level <= n_cap && !witnessed; ++n_level) {
      std::vector<PerR> per_r;
      FailedCandidate failed;
      bool n_ok = true;
      for (int r = 1; r <= r_range; ++r) {
        bool r_ok = false;
        TrajectoryResult last;
        for (int k0 = 1; k0 <= k0_cap; ++k0) {
          last = cell(nmap, n_level, r, k0);
          if (last.growth.kind == GrowthClass::Kind::Bounded &&
              last.final_sup <= budget.c_cap) {
            per_r.push_back({r, k0, last.final_sup});
            r_ok = true;
            break;
          }
        }
        if (!r_ok) {
          n_ok = false;
          failed.n_level = n_level;
          failed.r = r;
          failed.samples = last.samples;
          failed.growth = last.growth;
          break;
        }
      }
      if (n_ok) {
        w.n_level = n_level;
        w.per_r = std::move(per_r);
        witnessed = true;
      } else {
        bool refuted = failed.growth.kind == GrowthClass::Kind::Diverging ||
                       (failed.growth.kind == GrowthClass::Kind::Bounded &&
                        !failed.samples.empty() &&
                        failed.samples.back().value > budget.c_cap);
        if (!refuted) all_n_refuted = false;
        cex.per_n.push_back(std::move(failed));
      }
    }
    if (witnessed) {
      verdict.witnesses.push_back(std::move(w));
    } else if (all_n_refuted) {
      verdict.kind = Verdict::Kind::FailsAtScale;
      verdict.counterexamples.push_back(std::move(cex));
      return verdict;
    } else {
      all_witnessed = false;
      verdict.reason = "growth classifier abstained for some candidate level";
      verdict.counterexamples.push_back(std::move(cex));
    }
  }
  verdict.kind = all_witnessed ? Verdict::Kind::HoldsAtScale : Verdict::Kind::Inconclusive;
  return verdict;
}

}  // namespace

// ---------------------------------------------------------------------------
// Continuity / boundedness

namespace {

using LogColumnFn = std::function<double(int n, int m)>;  // log ||T e_n||_m

LogColumnFn column_norms(const MatrixOperator& t, const Space& cod) {
  return [&t, &cod](int n, int m) {
    return log_seminorm(cod.matrix, cod.ell, t.column(n), m);
  };
}

LogColumnFn column_norms(const RankOneOperator& t, const Space& cod) {
  return [&t, &cod](int n, int m) {
    double un = t.u[n];
    if (un == 0.0) return kNegInf;
    return std::log(std::abs(un)) + log_seminorm(cod.matrix, cod.ell, t.x, m);
  };
}

ContinuityWitness continuity_impl(const LogColumnFn& col, int dim, const Space& dom,
                                  int cod_kmax, const SearchBudget& budget) {
  GrowthThresholds thr;
  const int kmax = budget.k_max > 0 ? budget.k_max
                                    : std::min(dom.matrix.k_max(), cod_kmax);
  const int n_range = std::min(budget.n_range, dim);
  ContinuityWitness out;
  out.verdict.scope = budget;
  out.nmap.assign(kmax, 0);
  out.bound_per_level.assign(kmax, 0.0);
  bool inconclusive = false;
  for (int k = 1; k <= kmax; ++k) {
    bool found = false;
    TrajectoryResult last;
    for (int big_n = 1; big_n <= kmax; ++big_n) {
      auto traj = seq_sup_trajectory(
          n_range,
          [&](int n) { return log_ratio(col(n, k), dom.matrix.log_entry(n, big_n)); }, thr);
      last = traj;
      if (traj.growth.kind == GrowthClass::Kind::Bounded && traj.final_sup <= budget.c_cap) {
        out.nmap[k - 1] = big_n;
        out.bound_per_level[k - 1] = traj.final_sup;  // M(k)
        found = true;
        break;
      }
    }
    if (!found) {
      FailedCandidate fc;
      fc.n_level = kmax;
      fc.r = k;
      fc.samples = last.samples;
      fc.growth = last.growth;
      Counterexample cex;
      cex.per_n.push_back(std::move(fc));
      out.verdict.counterexamples.push_back(std::move(cex));
      if (last.growth.kind == GrowthClass::Kind::Diverging) {
        out.verdict.kind = Verdict::Kind::FailsAtScale;
        out.verdict.reason = "no admissible input level for some output level";
        return out;
      }
      inconclusive = true;
    }
  }
  if (inconclusive) {
    out.verdict.kind = Verdict::Kind::Inconclusive;
    out.verdict.reason = "growth classifier abstained";
    return out;
  }
  out.found = true;
  out.verdict.kind = Verdict::Kind::HoldsAtScale;
  return out;
}

Verdict boundedness_impl(const LogColumnFn& col, int dim, const Space& dom, int cod_kmax,
                         const SearchBudget& budget) {
  GrowthThresholds thr;
  const int kmax =
      budget.k_max > 0 ? budget.k_max : std::min(dom.matrix.k_max(), cod_kmax);
  const int n_range = std::min(budget.n_range, dim);
  const int r_range = budget.resolved_r_range(kmax);
  const int n_cap = std::max(kmax - 1, 1);
  Verdict verdict;
  verdict.scope = budget;
  bool all_refuted = true;
  Counterexample cex;
  for (int big_n = 1; big_n <= n_cap; ++big_n) {
    std::vector<PerR> per_r;
    bool ok = true;
    TrajectoryResult last;
    int bad_r = 0;
    for (int r = 1; r <= r_range; ++r) {
      auto traj = seq_sup_trajectory(
          n_range,
          [&](int n) { return log_ratio(col(n, r), dom.matrix.log_entry(n, big_n)); }, thr);
      last = traj;
      if (traj.growth.kind == GrowthClass::Kind::Bounded && traj.final_sup <= budget.c_cap) {
        per_r.push_back({r, 0, traj.final_sup});
      } else {
        ok = false;
        bad_r = r;
        break;
      }
    }
    if (ok) {
      Witness w;
      w.n_level = big_n;
      w.per_r = std::move(per_r);
      verdict.witnesses.push_back(std::move(w));
      verdict.kind = Verdict::Kind::HoldsAtScale;
      return verdict;
    }
    FailedCandidate fc;
    fc.n_level = big_n;
    fc.r = bad_r;
    fc.samples = last.samples;
    fc.growth = last.growth;
    bool refuted = last.growth.kind == GrowthClass::Kind::Diverging ||
                   (last.growth.kind == GrowthClass::Kind::Bounded &&
                    last.final_sup > budget.c_cap);
    if (!refuted) all_refuted = false;
    cex.per_n.push_back(std::move(fc));
  }
  verdict.counterexamples.push_back(std::move(cex));
  verdict.kind = all_refuted ? Verdict::Kind::FailsAtScale : Verdict::Kind::Inconclusive;
  if (!all_refuted) verdict.reason = "growth classifier abstained for some input level";
  return verdict;
}

}  // namespace

ContinuityWitness continuity_witness(const MatrixOperator& t, const Space& dom,
                                     const Space& cod, const SearchBudget& budget) {
  return continuity_impl(column_norms(t, cod), t.domain_dim(), dom, cod.matrix.k_max(),
                         budget);
}

ContinuityWitness continuity_witness(const RankOneOperator& t, const Space& dom,
                                     const Space& cod, const SearchBudget& budget) {
  int dim = std::min(dom.matrix.n_max(), std::max(t.u.max_index(), 1));
  return continuity_impl(column_norms(t, cod), dim, dom, cod.matrix.k_max(), budget);
}

Verdict boundedness_witness(const MatrixOperator& t, const Space& dom, const Space& cod,
                            const SearchBudget& budget) {
  return boundedness_impl(column_norms(t, cod), t.domain_dim(), dom, cod.matrix.k_max(),
                          budget);
}

Verdict boundedness_witness(const RankOneOperator& t, const Space& dom, const Space& cod,
                            const SearchBudget& budget) {
  int dim = std::min(dom.matrix.n_max(), std::max(t.u.max_index(), 1));
  return boundedness_impl(column_norms(t, cod), dim, dom, cod.matrix.k_max(), budget);
}

// ---------------------------------------------------------------------------
// Vogt inequality over an operator family

VogtReport vogt_inequality_check(std::span<const MatrixOperator> family, const Space& dom,
                                 const Space& cod, const Witness& witness, int r) {
  const auto& pr = witness.at_r(r);
  VogtReport report;
  double optimistic_worst = 0.0;
  for (int idx = 0; idx < static_cast<int>(family.size()); ++idx) {
    const auto& t = family[idx];
    double lhs_hi, lhs_lo, rhs_hi = 0.0, rhs_lo = 0.0;
    if (dom.ell.is_l1()) {
      double v = opnorm_l1_domain(t, dom, cod, r, witness.n_level).value();
      lhs_hi = lhs_lo = v;
    } else {
      auto b = opnorm_bounds(t, dom, cod, r, witness.n_level, {400, 3, 1});
      lhs_lo = b.lower.value();
      lhs_hi = b.upper.value();
    }
    for (int k = 1; k <= pr.k0; ++k) {
      int nk = witness.nmap.empty() ? witness.n_level : witness.nmap[k - 1];
      if (dom.ell.is_l1()) {
        double v = opnorm_l1_domain(t, dom, cod, k, nk).value();
        rhs_lo = std::max(rhs_lo, v);
        rhs_hi = std::max(rhs_hi, v);
      } else {
        auto b = opnorm_bounds(t, dom, cod, k, nk, {400, 3, 1});
        rhs_lo = std::max(rhs_lo, b.lower.value());
        rhs_hi = std::max(rhs_hi, b.upper.value());
      }
    }
    double cons = ExtReal::div(ExtReal(lhs_hi), ExtReal(pr.c) * ExtReal(rhs_lo)).value();
    double opt = ExtReal::div(ExtReal(lhs_lo), ExtReal(pr.c) * ExtReal(rhs_hi)).value();
    if (cons > report.max_ratio) {
      report.max_ratio = cons;
      report.worst_operator = idx;
    }
    optimistic_worst = std::max(optimistic_worst, opt);
  }
  report.inconclusive = report.max_ratio > 1.0 && optimistic_worst <= 1.0;
  return report;
}

// ---------------------------------------------------------------------------
// Matrix-pair condition

Verdict check_b_matrix_pair(const KotheMatrix& a, const KotheMatrix& b,
                            const SearchBudget& budget, const GrowthThresholds& thr) {
  const int kmax = budget.k_max > 0 ? budget.k_max : std::min(a.k_max(), b.k_max());
  const int nv = std::min(budget.n_range, b.n_max());
  const int ni = std::min(budget.n_range, a.n_max());
  auto cell = [&](const std::vector<int>& nmap, int n_level, int r, int k0) {
    return pair_sup_trajectory(
        nv, ni,
        [&](int v, int i) {
          double lhs = log_ratio(b.log_entry(v, r), a.log_entry(i, n_level));
          double rhs = kNegInf;
          for (int k = 1; k <= k0; ++k)
            rhs = std::max(rhs, log_ratio(b.log_entry(v, k), a.log_entry(i, nmap[k - 1])));
          return log_ratio(lhs, rhs);
        },
        thr);
  };
  return quantifier_search(budget, kmax, budget.nmap_family(kmax), cell,
                           CheckMode::Numeric);
}

// ---------------------------------------------------------------------------
// Symbolic (LP) mode

QuadrantMinCheck quadrant_min_bounded(std::span<const LinearForm2> forms) {
  if (forms.empty()) throw std::invalid_argument("quadrant_min_bounded: no forms");
  // Cross-section s + t = 1: f_k(x) = L_k(x, 1-x) is linear in x on [0,1];
  // min_k is concave piecewise-linear, so its max sits at an endpoint or at
  // a pairwise intersection. Homogeneity makes the quadrant sup 0 or +inf.
  std::vector<double> candidates = {0.0, 1.0};
  const int m = static_cast<int>(forms.size());
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) {
      double slope_p = forms[p].s_coef - forms[p].t_coef;
      double slope_q = forms[q].s_coef - forms[q].t_coef;
      if (slope_p == slope_q) continue;
      double x = (forms[q].t_coef - forms[p].t_coef) / (slope_p - slope_q);
      if (x > 0.0 && x < 1.0) candidates.push_back(x);
    }
  QuadrantMinCheck out;
  out.bounded_above = true;
  constexpr double kTol = 1e-12;
  for (double x : candidates) {
    double mn = kPosInf;
    for (const auto& f : forms) mn = std::min(mn, f.eval(x, 1.0 - x));
    out.support.emplace_back(x, mn);
    if (mn > kTol) {
      out.bounded_above = false;
      out.feasible_ray = {x, 1.0 - x};
    }
  }
  return out;
}

Verdict check_b_symbolic(const KotheMatrix& a, const KotheMatrix& b,
                         const SearchBudget& budget) {
  if (!a.generator() || !b.generator())
    throw std::invalid_argument("check_b_symbolic: both matrices must be generator-backed");
  const auto& ga = *a.generator();
  const auto& gb = *b.generator();
  const int kmax = budget.k_max > 0 ? budget.k_max : std::min(a.k_max(), b.k_max());
  const int r_range = budget.resolved_r_range(kmax);
  const int k0_cap = budget.resolved_k0_max(kmax);
  const int n_cap = std::max(kmax - 1, 1);

  Verdict verdict;
  verdict.scope = budget;
  verdict.mode = CheckMode::Symbolic;

  for (const auto& nmap : budget.nmap_family(kmax)) {
    bool witnessed = false;
    Counterexample cex;
    cex.nmap = nmap;
    Witness w;
    w.nmap = nmap;
    w.mode = CheckMode::Symbolic;
    for (int n_level = 1; n_level <= n_cap && !witnessed; ++n_level) {
      std::vector<PerR> per_r;
      bool n_ok = true;
      FailedCandidate failed;
      for (int r = 1; r <= r_range; ++r) {
        bool r_ok = false;
        for (int k0 = 1; k0 <= k0_cap; ++k0) {
          // log ratio = (g_{N(k)} - g_N) alpha_i + (h_r - h_k) beta_v over
          // the free quadrant (alpha_i, beta_v) >= 0.
          std::vector<LinearForm2> forms;
          forms.reserve(k0);
          for (int k = 1; k <= k0; ++k)
            forms.push_back({ga.level_coefficient(nmap[k - 1]) - ga.level_coefficient(n_level),
                             gb.level_coefficient(r) - gb.level_coefficient(k)});
          auto chk = quadrant_min_bounded(forms);
          if (chk.bounded_above) {
            per_r.push_back({r, k0, 1.0});  // sup of the log ratio is 0
            r_ok = true;
            break;
          }
          if (k0 == k0_cap) {
            failed.n_level = n_level;
            failed.r = r;
            RatioSample s;
            s.prefix = 0;
            s.value = kPosInf;
            s.indices = {};
            failed.samples = {s};
            failed.growth.kind = GrowthClass::Kind::Diverging;
            failed.growth.log_slope = kPosInf;
          }
        }
        if (!r_ok) {
          n_ok = false;
          break;
        }
      }
      if (n_ok) {
        w.n_level = n_level;
        w.per_r = std::move(per_r);
        witnessed = true;
      } else {
        cex.per_n.push_back(failed);
      }
    }
    if (witnessed) {
      verdict.witnesses.push_back(std::move(w));
    } else {
      verdict.kind = Verdict::Kind::FailsAtScale;
      verdict.counterexamples.push_back(std::move(cex));
      return verdict;
    }
  }
  verdict.kind = Verdict::Kind::HoldsAtScale;
  return verdict;
}

// ---------------------------------------------------------------------------
// Dual condition

Verdict check_b_dual(const FunctionalFamily& family, const KotheMatrix& a,
                     const SearchBudget& budget, const GrowthThresholds& thr) {
  if (family.functionals.empty())
    throw std::invalid_argument("check_b_dual: empty functional family");
  const int kmax = budget.k_max > 0 ? budget.k_max
                                    : std::min(a.k_max(), family.space.matrix.k_max());
  const int nv = std::min(budget.n_range, a.n_max());
  const int nu = static_cast<int>(family.functionals.size());

  // log ||u||*_k table.
  std::vector<std::vector<double>> dual(nu, std::vector<double>(kmax));
  for (int ui = 0; ui < nu; ++ui)
    for (int k = 1; k <= kmax; ++k)
      dual[ui][k - 1] = log_dual_seminorm(family.space.matrix, family.space.ell,
                                          family.functionals[ui], k);

  auto cell = [&](const std::vector<int>& nmap, int n_level, int r, int k0) {
    return seq_sup_trajectory(
        nv,
        [&](int v) {
          double worst = kNegInf;
          for (int ui = 0; ui < nu; ++ui) {
            double lhs = a.log_entry(v, r) + dual[ui][n_level - 1];
            double rhs = kNegInf;
            for (int k = 1; k <= k0; ++k)
              rhs = std::max(rhs, a.log_entry(v, k) + dual[ui][nmap[k - 1] - 1]);
            worst = std::max(worst, log_ratio(lhs, rhs));
          }
          return worst;
        },
        thr);
  };
  return quantifier_search(budget, kmax, budget.nmap_family(kmax), cell,
                           CheckMode::Numeric);
}

// ---------------------------------------------------------------------------
// Nuclearity

NuclearityReport check_nuclear(const KotheMatrix& b, const std::vector<int>& nmap,
                               const SearchBudget& budget, const GrowthThresholds& thr) {
  const int kmax = budget.k_max > 0 ? budget.k_max : b.k_max();
  const int n_range = std::min(budget.n_range, b.n_max());
  if (static_cast<int>(nmap.size()) < kmax)
    throw std::invalid_argument("check_nuclear: level map too short");

  NuclearityReport report;
  report.nmap = nmap;
  report.smap.assign(kmax, 0);
  report.verdict.scope = budget;

  bool any_candidates = false;
  bool all_found = true;
  bool refuted = false;
  for (int k = 1; k <= kmax; ++k) {
    const int nk = nmap[k - 1];
    if (nk >= kmax) continue;  // no admissible S(k) at this truncation
    any_candidates = true;
    bool found = false;
    std::vector<double> last_traj;
    GrowthClass last_cls;
    for (int s = nk + 1; s <= kmax; ++s) {
      std::vector<double> sums;
      sums.reserve(n_range);
      double acc = 0.0;
      for (int i = 1; i <= n_range; ++i) {
        acc += from_log(log_ratio(b.log_entry(i, nk), b.log_entry(i, s)));
        sums.push_back(acc);
      }
      auto cls = classify_values(sums, thr);
      last_traj = sums;
      last_cls = cls;
      if (cls.kind == GrowthClass::Kind::Bounded) {
        report.smap[k - 1] = s;
        report.theta_trajectory[k] = std::move(sums);
        report.theta[k] = acc;
        report.growth[k] = cls;
        found = true;
        break;
      }
    }
    if (!found) {
      all_found = false;
      report.theta_trajectory[k] = last_traj;
      report.growth[k] = last_cls;
      if (last_cls.kind == GrowthClass::Kind::Diverging) refuted = true;
    }
  }

  if (b.generator()) {
    // Exponent-space shortcut: infinite type is nuclear iff (log n)/alpha_n
    // stays bounded, finite type iff it tends to zero.
    const auto& gen = *b.generator();
    std::vector<double> rho;
    for (int n = 2; n <= std::max(n_range, 16); ++n) {
      double a = gen.alpha(n);
      rho.push_back(a > 0.0 ? std::log(static_cast<double>(n)) / a : kPosInf);
    }
    auto cls = classify_values(rho, thr);
    if (gen.type == PowerSeriesGenerator::Type::Infinite) {
      if (cls.kind == GrowthClass::Kind::Bounded) report.symbolic_nuclear = true;
      if (cls.kind == GrowthClass::Kind::Diverging) report.symbolic_nuclear = false;
      report.note = "shortcut: sup (log n)/alpha_n bounded on the budgeted prefix";
    } else {
      double early = cls.early_max, late = cls.late_max;
      if (cls.kind == GrowthClass::Kind::Diverging)
        report.symbolic_nuclear = false;
      else if (late <= 0.5 * early)
        report.symbolic_nuclear = true;
      else if (cls.kind == GrowthClass::Kind::Bounded)
        report.symbolic_nuclear = false;  // bounded away from zero
      report.note = "shortcut: (log n)/alpha_n must tend to zero (finite type)";
    }
  }

  if (!any_candidates) {
    report.verdict.kind = Verdict::Kind::Inconclusive;
    report.verdict.reason = "no level above N(k) available at this truncation";
  } else if (all_found) {
    report.verdict.kind = Verdict::Kind::HoldsAtScale;
  } else if (refuted) {
    report.verdict.kind = Verdict::Kind::FailsAtScale;
    report.verdict.reason = "theta partial sums diverge for every admissible S(k)";
  } else {
    report.verdict.kind = Verdict::Kind::Inconclusive;
    report.verdict.reason = "growth classifier abstained";
  }

  if (report.verdict.kind == Verdict::Kind::Inconclusive && report.symbolic_nuclear) {
    report.verdict.kind = *report.symbolic_nuclear ? Verdict::Kind::HoldsAtScale
                                                   : Verdict::Kind::FailsAtScale;
    report.verdict.mode = CheckMode::Symbolic;
  }
  return report;
}

double norm_system_equivalence_check(const KotheMatrix& b, const NuclearityReport& report,
                                     const SearchBudget& budget, int n_vectors) {
  const int dim = std::min(budget.n_range, b.n_max());
  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  EllNorm l1 = EllNorm::l1(), linf = EllNorm::linf();
  double worst = 0.0;
  for (int t = 0; t < n_vectors; ++t) {
    std::vector<double> vals(dim);
    for (double& v : vals) v = unif(rng);
    auto x = CoordVector::dense(vals);
    for (int k = 1; k <= static_cast<int>(report.smap.size()); ++k) {
      int s = report.smap[k - 1];
      if (s == 0) continue;
      int nk = report.nmap[k - 1];
      double theta = report.theta.at(k);
      double r1 = ExtReal::div(seminorm(b, linf, x, k), seminorm(b, l1, x, k)).value();
      double r2 = ExtReal::div(seminorm(b, l1, x, nk),
                               ExtReal(theta) * seminorm(b, linf, x, s))
                      .value();
      worst = std::max({worst, r1, r2});
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Bounded factorization

namespace {

struct NormInterval {
  double lo = 0.0;
  double hi = 0.0;
};

NormInterval norm_interval(const MatrixOperator& t, const Space& dom, const Space& cod,
                           int m, int k, std::uint64_t seed) {
  if (dom.ell.is_l1()) {
    double v = opnorm_l1_domain(t, dom, cod, m, k).value();
    return {v, v};
  }
  auto b = opnorm_bounds(t, dom, cod, m, k, {400, 3, seed});
  return {b.lower.value(), b.upper.value()};
}

}  // namespace

Verdict check_bf_operators(const MatrixOperator& r_op, const MatrixOperator& s_op,
                           const Space& e, const Space& f, const Space& g,
                           const SearchBudget& budget) {
  if (r_op.domain_dim() != s_op.codomain_dim())
    throw std::invalid_argument("check_bf_operators: factors do not compose");
  auto t_op = compose(r_op, s_op);
  const int kmax = budget.k_max > 0
                       ? budget.k_max
                       : std::min({e.matrix.k_max(), f.matrix.k_max(), g.matrix.k_max()});
  const int r_range = budget.resolved_r_range(kmax);
  const int k0_cap = budget.resolved_k0_max(kmax);
  const int n_cap = std::max(kmax - 1, 1);

  // Memoized norm intervals per (m, k).
  std::map<std::pair<int, int>, NormInterval> t_norm, r_norm, s_norm;
  auto get = [&](std::map<std::pair<int, int>, NormInterval>& cache,
                 const MatrixOperator& op, const Space& dom, const Space& cod, int m,
                 int k) -> NormInterval& {
    auto key = std::make_pair(m, k);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, norm_interval(op, dom, cod, m, k, budget.seed)).first;
    return it->second;
  };

  Verdict verdict;
  verdict.scope = budget;
  bool all_witnessed = true;
  for (const auto& nmap : budget.nmap_family(kmax)) {
    bool witnessed = false;
    Counterexample cex;
    cex.nmap = nmap;
    bool all_n_refuted = true;
    Witness w;
    w.nmap = nmap;
    for (int n_level = 1; n_level <= n_cap && !witnessed; ++n_level) {
      std::vector<PerR> per_r;
      bool n_ok = true;
      FailedCandidate failed;
      for (int r = 1; r <= r_range; ++r) {
        auto lhs = get(t_norm, t_op, e, g, r, n_level);
        bool r_ok = false, r_refuted = true;
        for (int k0 = 1; k0 <= k0_cap; ++k0) {
          double r_lo = 0.0, r_hi = 0.0, s_lo = 0.0, s_hi = 0.0;
          for (int k = 1; k <= k0; ++k) {
            auto rn = get(r_norm, r_op, f, g, k, nmap[k - 1]);
            auto sn = get(s_norm, s_op, e, f, k, nmap[k - 1]);
            r_lo = std::max(r_lo, rn.lo);
            r_hi = std::max(r_hi, rn.hi);
            s_lo = std::max(s_lo, sn.lo);
            s_hi = std::max(s_hi, sn.hi);
          }
          double cons = ExtReal::div(ExtReal(lhs.hi), ExtReal(r_lo) * ExtReal(s_lo)).value();
          double opt = ExtReal::div(ExtReal(lhs.lo), ExtReal(r_hi) * ExtReal(s_hi)).value();
          if (cons <= budget.c_cap) {
            per_r.push_back({r, k0, cons});
            r_ok = true;
            break;
          }
          if (opt <= budget.c_cap) r_refuted = false;
        }
        if (!r_ok) {
          n_ok = false;
          failed.n_level = n_level;
          failed.r = r;
          failed.growth.kind = r_refuted ? GrowthClass::Kind::Diverging
                                         : GrowthClass::Kind::Inconclusive;
          if (!r_refuted) all_n_refuted = false;
          break;
        }
      }
      if (n_ok) {
        w.n_level = n_level;
        w.per_r = std::move(per_r);
        witnessed = true;
      } else {
        cex.per_n.push_back(failed);
      }
    }
    if (witnessed) {
      verdict.witnesses.push_back(std::move(w));
    } else if (all_n_refuted) {
      verdict.kind = Verdict::Kind::FailsAtScale;
      verdict.counterexamples.push_back(std::move(cex));
      return verdict;
    } else {
      all_witnessed = false;
      verdict.reason = "interval bounds too wide to decide";
      verdict.counterexamples.push_back(std::move(cex));
    }
  }
  verdict.kind = all_witnessed ? Verdict::Kind::HoldsAtScale : Verdict::Kind::Inconclusive;
  return verdict;
}

Verdict check_bf_condition(const FunctionalFamily& family, const KotheMatrix& b,
                           const KotheMatrix& c, const SearchBudget& budget,
                           const NuclearityReport* nuclear, const GrowthThresholds& thr) {
  const int kmax = budget.k_max > 0
                       ? budget.k_max
                       : std::min({b.k_max(), c.k_max(), family.space.matrix.k_max()});
  const int ni = std::min(budget.n_range, b.n_max());
  const int nj = std::min(budget.n_range, c.n_max());
  const int nu = static_cast<int>(family.functionals.size());

  std::vector<std::vector<double>> dual(nu, std::vector<double>(kmax));
  for (int ui = 0; ui < nu; ++ui)
    for (int k = 1; k <= kmax; ++k)
      dual[ui][k - 1] = log_dual_seminorm(family.space.matrix, family.space.ell,
                                          family.functionals[ui], k);

  auto cell = [&](const std::vector<int>& nmap, int n_level, int r, int k0) {
    return pair_sup_trajectory(
        ni, nj,
        [&](int i, int j) {
          double worst = kNegInf;
          for (int ui = 0; ui < nu; ++ui) {
            double lhs = c.log_entry(j, r) + dual[ui][n_level - 1];
            double m1 = kNegInf, m2 = kNegInf;
            for (int k = 1; k <= k0; ++k) {
              m1 = std::max(m1, dual[ui][nmap[k - 1] - 1] + b.log_entry(i, k));
              m2 = std::max(m2, log_ratio(c.log_entry(j, k), b.log_entry(i, nmap[k - 1])));
            }
            double rhs = (m1 == kNegInf || m2 == kNegInf) ? kNegInf
                         : (m1 == kPosInf || m2 == kPosInf) ? kPosInf
                                                            : m1 + m2;
            worst = std::max(worst, log_ratio(lhs, rhs));
          }
          return worst;
        },
        thr);
  };
  auto verdict = quantifier_search(budget, kmax, budget.nmap_family(kmax), cell,
                                   CheckMode::Numeric);
  if (nuclear && !nuclear->verdict.holds())
    verdict.reason += (verdict.reason.empty() ? "" : "; ") +
                      std::string("warning: nuclearity precondition not established "
                                  "(necessity direction unaffected)");
  return verdict;
}

double verify_bf_condition(const FunctionalFamily& family, const KotheMatrix& b,
                           const KotheMatrix& c, const Witness& witness,
                           const SearchBudget& budget) {
  const int kmax = static_cast<int>(witness.nmap.size());
  const int ni = std::min(budget.n_range, b.n_max());
  const int nj = std::min(budget.n_range, c.n_max());
  double worst = 0.0;
  for (const auto& pr : witness.per_r) {
    for (int i = 1; i <= ni; ++i)
      for (int j = 1; j <= nj; ++j)
        for (const auto& u : family.functionals) {
          double lhs = c.log_entry(j, pr.r) +
                       log_dual_seminorm(family.space.matrix, family.space.ell, u,
                                         witness.n_level);
          double m1 = kNegInf, m2 = kNegInf;
          for (int k = 1; k <= std::min(pr.k0, kmax); ++k) {
            int nk = witness.nmap[k - 1];
            m1 = std::max(m1, log_dual_seminorm(family.space.matrix, family.space.ell, u,
                                                nk) +
                                  b.log_entry(i, k));
            m2 = std::max(m2, log_ratio(c.log_entry(j, k), b.log_entry(i, nk)));
          }
          double rhs = (m1 == kNegInf || m2 == kNegInf) ? kNegInf
                       : (m1 == kPosInf || m2 == kPosInf) ? kPosInf
                                                          : m1 + m2;
          double ratio =
              from_log(log_ratio(lhs, rhs == kPosInf ? kPosInf
                                                     : rhs + std::log(pr.c)));
          worst = std::max(worst, ratio);
        }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Witness splicing (tensor factorization pipeline)

std::vector<int> splice_level_map(const std::vector<int>& nmap, int n, int k_max) {
  if (n < 1 || n > static_cast<int>(nmap.size()))
    throw std::out_of_range("splice_level_map: n outside the map");
  std::vector<int> s(nmap.size());
  for (int k = 1; k <= static_cast<int>(nmap.size()); ++k) {
    if (k <= n)
      s[k - 1] = nmap[n - 1];
    else
      s[k - 1] = std::min(std::max(nmap[k - 1] + 1, nmap[n - 1]), k_max);
  }
  return s;
}

Witness combine_witnesses(const Witness& w_ec, const Witness& w_bc,
                          const std::vector<int>& nmap, int k_max) {
  auto spliced = splice_level_map(nmap, w_bc.n_level, k_max);
  if (w_ec.nmap != spliced)
    throw std::invalid_argument(
        "combine_witnesses: the dual-condition witness does not answer the spliced "
        "level map (pre-register it in the budget)");
  Witness out;
  out.nmap = nmap;
  out.n_level = w_ec.n_level;
  out.mode = CheckMode::Numeric;
  for (const auto& pr : w_bc.per_r) {
    int q_top = nmap[pr.k0 - 1];
    int s0 = 0;
    double c2 = 0.0;
    for (int q = 1; q <= q_top; ++q) {
      const auto& eq = w_ec.at_r(q);
      s0 = std::max(s0, eq.k0);
      c2 = std::max(c2, eq.c);
    }
    out.per_r.push_back({pr.r, std::max(pr.k0, s0), pr.c * c2});
  }
  return out;
}

const Witness* find_witness(const Verdict& verdict, const std::vector<int>& nmap) {
  for (const auto& w : verdict.witnesses)
    if (w.nmap == nmap) return &w;
  return nullptr;
}

}  // namespace kothe

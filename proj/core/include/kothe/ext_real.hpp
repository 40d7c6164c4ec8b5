#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <span>
#include <stdexcept>

namespace kothe {

inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Nonnegative extended real. Conventions: 0/0 = 0, c/0 = +inf for c > 0,
/// 0 * inf = 0, +inf absorbs addition and max.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(double v) : v_(v) {
    if (std::isnan(v) || v < 0.0)
      throw std::invalid_argument("ExtReal: value must be nonnegative");
  }

  static ExtReal inf() { return ExtReal(kPosInf); }
  /// Builds from a log-domain value (-inf encodes 0, +inf encodes infinity).
  static ExtReal from_log(double lv) {
    if (lv == kNegInf) return ExtReal(0.0);
    if (lv == kPosInf) return inf();
    return ExtReal(std::exp(lv));
  }

  double value() const { return v_; }
  double log() const { return v_ == 0.0 ? kNegInf : std::log(v_); }
  bool finite() const { return std::isfinite(v_); }
  bool zero() const { return v_ == 0.0; }

  friend ExtReal operator*(ExtReal a, ExtReal b) {
    if (a.zero() || b.zero()) return ExtReal(0.0);  // 0 * inf = 0
    return ExtReal(a.v_ * b.v_);
  }
  friend ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal(a.v_ + b.v_); }
  friend auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }
  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }

  static ExtReal div(ExtReal num, ExtReal den) {
    if (num.zero()) return ExtReal(0.0);        // 0/0 = 0, 0/c = 0
    if (den.zero()) return inf();               // c/0 = +inf
    if (!den.finite()) return ExtReal(0.0);     // c/inf = 0 (inf/inf treated as 0)
    return ExtReal(num.v_ / den.v_);
  }

 private:
  double v_ = 0.0;
};

/// Log-domain ratio with the same conventions as ExtReal::div.
inline double log_ratio(double log_num, double log_den) {
  if (log_num == kNegInf) return kNegInf;
  if (log_den == kNegInf) return kPosInf;
  if (log_den == kPosInf) return kNegInf;
  if (log_num == kPosInf) return kPosInf;
  return log_num - log_den;
}

inline double log_sum_exp(std::span<const double> ls) {
  double m = kNegInf;
  for (double l : ls) m = std::max(m, l);
  if (m == kNegInf || m == kPosInf) return m;
  double s = 0.0;
  for (double l : ls) s += std::exp(l - m);
  return m + std::log(s);
}

/// log of the l_p norm of exp(ls). p in [1, inf].
inline double log_lp_norm(std::span<const double> ls, double p) {
  if (ls.empty()) return kNegInf;
  if (std::isinf(p)) {
    double m = kNegInf;
    for (double l : ls) m = std::max(m, l);
    return m;
  }
  if (p == 1.0) return log_sum_exp(ls);
  double m = kNegInf;
  for (double l : ls) m = std::max(m, l);
  if (m == kNegInf || m == kPosInf) return m;
  double s = 0.0;
  for (double l : ls) s += std::exp(p * (l - m));
  return m + std::log(s) / p;
}

}  // namespace kothe

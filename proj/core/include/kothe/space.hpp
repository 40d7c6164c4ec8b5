#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kothe/ext_real.hpp"

namespace kothe {

/// The Banach sequence-space norm carrying the monotone-norm contract.
/// Lp covers 1 <= p <= inf; C0 evaluates as the sup-norm on finitely
/// supported vectors, its dual is l1.
struct EllNorm {
  enum class Kind { Lp, C0 };
  Kind kind = Kind::Lp;
  double p = 1.0;

  static EllNorm l1() { return {Kind::Lp, 1.0}; }
  static EllNorm l2() { return {Kind::Lp, 2.0}; }
  static EllNorm linf() { return {Kind::Lp, kPosInf}; }
  static EllNorm lp(double p);
  static EllNorm c0() { return {Kind::C0, kPosInf}; }

  bool is_l1() const { return kind == Kind::Lp && p == 1.0; }
  bool is_sup_like() const { return kind == Kind::C0 || std::isinf(p); }
  /// Exponent of the dual norm: 1/p + 1/p' = 1; c0 dualizes to l1.
  double conjugate_exponent() const;
  std::string name() const;
  static EllNorm parse(const std::string& s);
};

/// Power-series weight rule: infinite type a_n^k = exp(k * alpha_n),
/// finite type a_n^k = exp(-alpha_n / k).
struct PowerSeriesGenerator {
  enum class Type { Infinite, Finite };
  struct AlphaRule {
    enum class Kind { Linear, Log, List };
    Kind kind = Kind::Linear;
    double scale = 1.0;           // Linear: alpha_n = scale*n; Log: scale*log(n+1)
    std::vector<double> values;   // List
  };

  Type type = Type::Infinite;
  AlphaRule alpha_rule;

  double alpha(int n) const;
  /// Coefficient g_k with log a_n^k = g_k * alpha_n.
  double level_coefficient(int k) const {
    return type == Type::Infinite ? static_cast<double>(k) : -1.0 / k;
  }
  double log_entry(int n, int k) const { return level_coefficient(k) * alpha(n); }
};

struct Violation {
  int n = 0;
  int k = 0;  // 0 for row-level violations
  std::string what;
};

enum class Pairing { RowMajor, Diagonal };

/// Truncated Koethe matrix a_n^k, n = 1..n_max, k = 1..k_max. Entries are
/// held both in linear and log domain; generator-backed instances keep the
/// generator descriptor for symbolic mode.
class KotheMatrix {
 public:
  static KotheMatrix from_grid(std::vector<std::vector<double>> rows, std::string label = {});
  static KotheMatrix from_generator(PowerSeriesGenerator gen, int n_max, int k_max,
                                    std::string label = {});
  /// Projective tensor weight grid d_{vz}^k = a_v^k b_z^k over paired
  /// indices enumerated by `pairing`.
  static KotheMatrix tensor(const KotheMatrix& a, const KotheMatrix& b, Pairing pairing);

  int n_max() const { return n_max_; }
  int k_max() const { return k_max_; }
  const std::string& label() const { return label_; }
  const std::optional<PowerSeriesGenerator>& generator() const { return gen_; }

  double entry(int n, int k) const;      // linear, may be +inf
  double log_entry(int n, int k) const;  // -inf encodes 0

  std::vector<Violation> validate() const;

  /// For a tensor-built matrix, the (v, z) pair behind row index n.
  std::pair<int, int> tensor_pair(int n) const;
  bool is_tensor() const { return !pairs_.empty(); }

 private:
  KotheMatrix() = default;
  void check_range(int n, int k) const;

  int n_max_ = 0;
  int k_max_ = 0;
  std::string label_;
  std::vector<std::vector<double>> values_;  // [n-1][k-1]
  std::vector<std::vector<double>> logs_;
  std::optional<PowerSeriesGenerator> gen_;
  std::vector<std::pair<int, int>> pairs_;   // tensor row -> (v, z)
};

/// Sparse coordinate list; either an element x or a functional u acting by
/// u(x) = sum_n u_n x_n.
struct CoordVector {
  enum class Role { Element, Functional };
  Role role = Role::Element;
  std::vector<std::pair<int, double>> coords;  // (index n >= 1, value), indices distinct

  static CoordVector element(std::vector<std::pair<int, double>> c);
  static CoordVector functional(std::vector<std::pair<int, double>> c);
  static CoordVector basis(int n) { return element({{n, 1.0}}); }
  static CoordVector coordinate_functional(int i) { return functional({{i, 1.0}}); }
  static CoordVector dense(const std::vector<double>& values,
                           Role role = Role::Element);

  double operator[](int n) const;
  int max_index() const;
  bool is_zero() const;
  /// Pairing <u, x> = sum u_n x_n.
  double pair(const CoordVector& x) const;
};

inline std::vector<Violation> validate_matrix(const KotheMatrix& a) { return a.validate(); }

/// ||x||_k = || (x_n a_n^k) ||_ell.
ExtReal seminorm(const KotheMatrix& a, const EllNorm& ell, const CoordVector& x, int k);
double log_seminorm(const KotheMatrix& a, const EllNorm& ell, const CoordVector& x, int k);

/// Closed-form weighted dual norm ||u||*_k = || (u_n / a_n^k) ||_{p'};
/// +inf when some u_n != 0 sits on a zero weight.
ExtReal dual_seminorm(const KotheMatrix& a, const EllNorm& ell, const CoordVector& u, int k);
double log_dual_seminorm(const KotheMatrix& a, const EllNorm& ell, const CoordVector& u, int k);

inline ExtReal basis_seminorm(const KotheMatrix& a, int n, int k) {
  return ExtReal(a.entry(n, k));
}

/// A truncated ell-Koethe space: weight matrix plus the Banach norm.
struct Space {
  KotheMatrix matrix;
  EllNorm ell;
};

}  // namespace kothe

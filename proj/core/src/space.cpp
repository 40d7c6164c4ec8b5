#include "kothe/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kothe {

EllNorm EllNorm::lp(double p) {
  if (std::isnan(p) || p < 1.0)
    throw std::invalid_argument("EllNorm: p must satisfy 1 <= p <= inf");
  return {Kind::Lp, p};
}

double EllNorm::conjugate_exponent() const {
  if (kind == Kind::C0) return 1.0;
  if (p == 1.0) return kPosInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

std::string EllNorm::name() const {
  if (kind == Kind::C0) return "c0";
  if (p == 1.0) return "l1";
  if (p == 2.0) return "l2";
  if (std::isinf(p)) return "linf";
  return "lp:" + std::to_string(p);
}

EllNorm EllNorm::parse(const std::string& s) {
  if (s == "l1") return l1();
  if (s == "l2") return l2();
  if (s == "linf") return linf();
  if (s == "c0") return c0();
  if (s.rfind("lp:", 0) == 0) return lp(std::stod(s.substr(3)));
  throw std::invalid_argument("unknown norm kind: " + s);
}

double PowerSeriesGenerator::alpha(int n) const {
  if (n < 1) throw std::out_of_range("alpha index must be >= 1");
  switch (alpha_rule.kind) {
    case AlphaRule::Kind::Linear:
      return alpha_rule.scale * n;
    case AlphaRule::Kind::Log:
      return alpha_rule.scale * std::log(static_cast<double>(n) + 1.0);
    case AlphaRule::Kind::List:
      if (n > static_cast<int>(alpha_rule.values.size()))
        throw std::out_of_range("alpha list too short");
      return alpha_rule.values[n - 1];
  }
  throw std::logic_error("unreachable");
}

KotheMatrix KotheMatrix::from_grid(std::vector<std::vector<double>> rows, std::string label) {
  KotheMatrix m;
  m.n_max_ = static_cast<int>(rows.size());
  if (m.n_max_ == 0) throw std::invalid_argument("KotheMatrix: empty grid");
  m.k_max_ = static_cast<int>(rows[0].size());
  if (m.k_max_ == 0) throw std::invalid_argument("KotheMatrix: empty rows");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != m.k_max_)
      throw std::invalid_argument("KotheMatrix: ragged grid");
  m.label_ = std::move(label);
  m.values_ = std::move(rows);
  m.logs_.resize(m.n_max_);
  for (int n = 0; n < m.n_max_; ++n) {
    m.logs_[n].resize(m.k_max_);
    for (int k = 0; k < m.k_max_; ++k) {
      double v = m.values_[n][k];
      m.logs_[n][k] = v == 0.0 ? kNegInf : std::log(v);
    }
  }
  return m;
}

KotheMatrix KotheMatrix::from_generator(PowerSeriesGenerator gen, int n_max, int k_max,
                                        std::string label) {
  if (n_max < 1 || k_max < 1) throw std::invalid_argument("KotheMatrix: bad truncation");
  KotheMatrix m;
  m.n_max_ = n_max;
  m.k_max_ = k_max;
  m.label_ = std::move(label);
  m.gen_ = std::move(gen);
  m.logs_.resize(n_max);
  m.values_.resize(n_max);
  for (int n = 1; n <= n_max; ++n) {
    m.logs_[n - 1].resize(k_max);
    m.values_[n - 1].resize(k_max);
    for (int k = 1; k <= k_max; ++k) {
      double lv = m.gen_->log_entry(n, k);
      m.logs_[n - 1][k - 1] = lv;
      m.values_[n - 1][k - 1] = std::exp(lv);
    }
  }
  return m;
}

KotheMatrix KotheMatrix::tensor(const KotheMatrix& a, const KotheMatrix& b, Pairing pairing) {
  if (a.k_max() != b.k_max())
    throw std::invalid_argument("tensor: level counts differ");
  KotheMatrix m;
  m.k_max_ = a.k_max();
  m.n_max_ = a.n_max() * b.n_max();
  m.label_ = a.label() + "(x)" + b.label();
  m.pairs_.reserve(m.n_max_);
  if (pairing == Pairing::RowMajor) {
    for (int v = 1; v <= a.n_max(); ++v)
      for (int z = 1; z <= b.n_max(); ++z) m.pairs_.emplace_back(v, z);
  } else {
    // Cantor anti-diagonals v + z = const, so truncation keeps balanced pairs.
    for (int d = 2; d <= a.n_max() + b.n_max(); ++d)
      for (int v = 1; v < d; ++v) {
        int z = d - v;
        if (v <= a.n_max() && z >= 1 && z <= b.n_max()) m.pairs_.emplace_back(v, z);
      }
  }
  m.values_.resize(m.n_max_);
  m.logs_.resize(m.n_max_);
  for (int n = 0; n < m.n_max_; ++n) {
    auto [v, z] = m.pairs_[n];
    m.values_[n].resize(m.k_max_);
    m.logs_[n].resize(m.k_max_);
    for (int k = 1; k <= m.k_max_; ++k) {
      m.values_[n][k - 1] = a.entry(v, k) * b.entry(z, k);
      m.logs_[n][k - 1] = a.log_entry(v, k) + b.log_entry(z, k);
    }
  }
  return m;
}

void KotheMatrix::check_range(int n, int k) const {
  if (n < 1 || n > n_max_) throw std::out_of_range("row index out of range");
  if (k < 1 || k > k_max_) throw std::out_of_range("level out of range");
}

double KotheMatrix::entry(int n, int k) const {
  check_range(n, k);
  return values_[n - 1][k - 1];
}

double KotheMatrix::log_entry(int n, int k) const {
  check_range(n, k);
  return logs_[n - 1][k - 1];
}

std::pair<int, int> KotheMatrix::tensor_pair(int n) const {
  if (!is_tensor()) throw std::logic_error("not a tensor matrix");
  if (n < 1 || n > n_max_) throw std::out_of_range("row index out of range");
  return pairs_[n - 1];
}

std::vector<Violation> KotheMatrix::validate() const {
  std::vector<Violation> out;
  for (int n = 1; n <= n_max_; ++n) {
    double row_sup = 0.0;
    for (int k = 1; k <= k_max_; ++k) {
      double v = entry(n, k);
      if (std::isnan(v) || v < 0.0)
        out.push_back({n, k, "negative or NaN entry"});
      else
        row_sup = std::max(row_sup, v);
      if (k < k_max_ && entry(n, k) > entry(n, k + 1))
        out.push_back({n, k, "not monotone in k"});
    }
    if (row_sup == 0.0) out.push_back({n, 0, "row has zero sup"});
  }
  return out;
}

CoordVector CoordVector::element(std::vector<std::pair<int, double>> c) {
  CoordVector v;
  v.role = Role::Element;
  v.coords = std::move(c);
  return v;
}

CoordVector CoordVector::functional(std::vector<std::pair<int, double>> c) {
  CoordVector v;
  v.role = Role::Functional;
  v.coords = std::move(c);
  return v;
}

CoordVector CoordVector::dense(const std::vector<double>& values, Role role) {
  CoordVector v;
  v.role = role;
  for (int n = 0; n < static_cast<int>(values.size()); ++n)
    if (values[n] != 0.0) v.coords.emplace_back(n + 1, values[n]);
  return v;
}

double CoordVector::operator[](int n) const {
  for (const auto& [i, val] : coords)
    if (i == n) return val;
  return 0.0;
}

int CoordVector::max_index() const {
  int m = 0;
  for (const auto& [i, val] : coords) m = std::max(m, i);
  return m;
}

bool CoordVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const auto& c) { return c.second == 0.0; });
}

double CoordVector::pair(const CoordVector& x) const {
  double s = 0.0;
  for (const auto& [i, u] : coords) s += u * x[i];
  return s;
}

namespace {

void check_indices(const KotheMatrix& a, const CoordVector& x) {
  for (const auto& [n, v] : x.coords)
    if (n < 1 || n > a.n_max()) throw std::out_of_range("coordinate index out of range");
}

// Scaled p-norm of nonnegative terms; exact in linear domain.
ExtReal lp_of_terms(const std::vector<ExtReal>& terms, double p) {
  for (const auto& t : terms)
    if (!t.finite()) return ExtReal::inf();
  if (std::isinf(p)) {
    ExtReal m(0.0);
    for (const auto& t : terms) m = std::max(m, t);
    return m;
  }
  if (p == 1.0) {
    ExtReal s(0.0);
    for (const auto& t : terms) s = s + t;
    return s;
  }
  double m = 0.0;
  for (const auto& t : terms) m = std::max(m, t.value());
  if (m == 0.0) return ExtReal(0.0);
  double s = 0.0;
  for (const auto& t : terms) s += std::pow(t.value() / m, p);
  return ExtReal(m * std::pow(s, 1.0 / p));
}

}  // namespace

ExtReal seminorm(const KotheMatrix& a, const EllNorm& ell, const CoordVector& x, int k) {
  check_indices(a, x);
  std::vector<ExtReal> terms;
  terms.reserve(x.coords.size());
  for (const auto& [n, v] : x.coords)
    terms.push_back(ExtReal(std::abs(v)) * ExtReal(a.entry(n, k)));
  double p = ell.kind == EllNorm::Kind::C0 ? kPosInf : ell.p;
  return lp_of_terms(terms, p);
}

double log_seminorm(const KotheMatrix& a, const EllNorm& ell, const CoordVector& x, int k) {
  check_indices(a, x);
  std::vector<double> ls;
  ls.reserve(x.coords.size());
  for (const auto& [n, v] : x.coords) {
    if (v == 0.0) continue;
    ls.push_back(std::log(std::abs(v)) + a.log_entry(n, k));
  }
  double p = ell.kind == EllNorm::Kind::C0 ? kPosInf : ell.p;
  return log_lp_norm(ls, p);
}

ExtReal dual_seminorm(const KotheMatrix& a, const EllNorm& ell, const CoordVector& u, int k) {
  check_indices(a, u);
  std::vector<ExtReal> terms;
  terms.reserve(u.coords.size());
  for (const auto& [n, v] : u.coords)
    terms.push_back(ExtReal::div(ExtReal(std::abs(v)), ExtReal(a.entry(n, k))));
  return lp_of_terms(terms, ell.conjugate_exponent());
}

double log_dual_seminorm(const KotheMatrix& a, const EllNorm& ell, const CoordVector& u, int k) {
  check_indices(a, u);
  std::vector<double> ls;
  ls.reserve(u.coords.size());
  for (const auto& [n, v] : u.coords) {
    if (v == 0.0) continue;
    ls.push_back(log_ratio(std::log(std::abs(v)), a.log_entry(n, k)));
  }
  return log_lp_norm(ls, ell.conjugate_exponent());
}

}  // namespace kothe

#include "kothe/certificates.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace kothe {

std::vector<std::vector<int>> SearchBudget::nmap_family(int kmax) const {
  std::vector<std::vector<int>> out;
  auto push_unique = [&](std::vector<int> m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
  };
  for (int s : shifts) {
    std::vector<int> m(kmax);
    for (int k = 1; k <= kmax; ++k) m[k - 1] = std::min(k + s, kmax);
    push_unique(std::move(m));
  }
  for (const auto& m : extra_nmaps) {
    if (static_cast<int>(m.size()) != kmax)
      throw std::invalid_argument("pre-registered level map has wrong length");
    for (int k = 0; k < kmax; ++k) {
      if (m[k] < 1 || m[k] > kmax)
        throw std::invalid_argument("pre-registered level map out of range");
      if (k > 0 && m[k] < m[k - 1])
        throw std::invalid_argument("pre-registered level map not nondecreasing");
    }
    push_unique(m);
  }
  if (out.empty()) throw std::invalid_argument("empty adversarial map family");
  return out;
}

const PerR& Witness::at_r(int r) const {
  for (const auto& pr : per_r)
    if (pr.r == r) return pr;
  throw std::out_of_range("witness does not cover the requested r");
}

FunctionalFamily FunctionalFamily::coordinate_functionals(Space space) {
  FunctionalFamily f{{}, std::move(space)};
  for (int i = 1; i <= f.space.matrix.n_max(); ++i)
    f.functionals.push_back(CoordVector::coordinate_functional(i));
  return f;
}

FunctionalFamily FunctionalFamily::default_for(Space space, int n_random, std::uint64_t seed) {
  FunctionalFamily f = coordinate_functionals(space);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int j = 0; j < n_random; ++j) {
    std::vector<double> vals(f.space.matrix.n_max());
    for (double& v : vals) v = unif(rng);
    f.functionals.push_back(CoordVector::dense(vals, CoordVector::Role::Functional));
  }
  return f;
}

}  // namespace kothe

// Shared fixtures for the test suites.
#pragma once

#include <algmod/algebra.hpp>

#include <random>

namespace algmod::testing {

inline int mono_idx(int d, int a, int b) {
  if (a > b) std::swap(a, b);
  int idx = 0;
  for (int i = 0; i < a; ++i) idx += d - i;
  return idx + (b - a);
}

inline std::vector<int> mono_vec(int d, std::initializer_list<std::pair<int, std::pair<int, int>>> terms) {
  std::vector<int> v(static_cast<std::size_t>(degree2_monomials(d)), 0);
  for (auto [coeff, ab] : terms) v[static_cast<std::size_t>(mono_idx(d, ab.first, ab.second))] = coeff;
  return v;
}

inline Subspace monomial_span(int d, std::int64_t q, const std::vector<std::vector<int>>& combos) {
  Eigen::Index monos = degree2_monomials(d);
  if (combos.empty()) return Subspace(monos, q);
  MatZ rows = zeros(static_cast<Eigen::Index>(combos.size()), monos, q);
  for (std::size_t r = 0; r < combos.size(); ++r)
    for (Eigen::Index c = 0; c < monos; ++c) rows(static_cast<Eigen::Index>(r), c) = Zmod(combos[r][c], q);
  return Subspace::from_span(rows);
}

/// k[a,b,c,d]/(a^2, ab, b^2, c^2, cd, d^2, ad - bc) over F_2, rank 8.
inline BasedAlgebra rank8_example() {
  const int d = 4;
  std::vector<std::vector<int>> rel = {
      mono_vec(d, {{1, {0, 0}}}),
      mono_vec(d, {{1, {0, 1}}}),
      mono_vec(d, {{1, {1, 1}}}),
      mono_vec(d, {{1, {2, 2}}}),
      mono_vec(d, {{1, {2, 3}}}),
      mono_vec(d, {{1, {3, 3}}}),
      mono_vec(d, {{1, {0, 3}}, {1, {1, 2}}}),
  };
  return make_truncated_local(4, monomial_span(4, 2, rel), 2);
}

/// F_4 on the basis (1, w), w^2 = 1 + w.
inline BasedAlgebra make_f4() {
  StructureTable t(2, 2);
  t.d(0) = Zmod(1, 2);
  t.at(0, 0, 0) = Zmod(1, 2);
  t.at(0, 1, 1) = Zmod(1, 2);
  t.at(1, 0, 1) = Zmod(1, 2);
  t.at(1, 1, 0) = Zmod(1, 2);
  t.at(1, 1, 1) = Zmod(1, 2);
  return BasedAlgebra::require(t, "F_4");
}

inline MatZ random_invertible(int n, std::int64_t q, std::mt19937& rng) {
  MatZ m = zeros(n, n, q);
  do {
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Zmod(std::int64_t(rng() % q), q);
  } while (det(m).is_zero());
  return m;
}

inline VecZ random_vec(int n, std::int64_t q, std::mt19937& rng) {
  VecZ v = zvec(n, q);
  for (int i = 0; i < n; ++i) v(i) = Zmod(std::int64_t(rng() % q), q);
  return v;
}

inline VecZ basis_vec(int n, int i, std::int64_t q) {
  VecZ v = zvec(n, q);
  v(i) = Zmod(1, q);
  return v;
}

}  // namespace algmod::testing

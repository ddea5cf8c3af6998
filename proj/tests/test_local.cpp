#include <doctest.h>

#include <algmod/action.hpp>
#include <algmod/classify.hpp>

#include "helpers.hpp"

#include <fstream>
#include <random>

using namespace algmod;
using namespace algmod::testing;

TEST_CASE("nilradical: split reduced, bullet maximal, F_4 a field") {
  CHECK(nilradical(make_split(4, 3)).dim() == 0);
  for (int n : {2, 3, 5}) {
    Subspace nil = nilradical(make_bullet(n, 2));
    CHECK(nil.dim() == n - 1);
    for (int i = 1; i < n; ++i) CHECK(nil.contains(basis_vec(n, i, 2)));
  }
  CHECK(nilradical(make_f4()).dim() == 0);
  // exhaustive cross-check over F_4: no nonzero element is nilpotent
  BasedAlgebra f4 = make_f4();
  VectorStream vs(2, 2);
  int nilpotent = 0;
  while (auto v = vs.next())
    if (is_zero_vec(f4.power(*v, 2))) ++nilpotent;
  CHECK(nilpotent == 1);
}

TEST_CASE("nilradical is an ideal") {
  std::mt19937 rng(61);
  for (const BasedAlgebra& a :
       {make_bullet(4, 3), make_power_quotient(4, 2), product(make_split(2, 3), make_power_quotient(2, 3))}) {
    Subspace nil = nilradical(a);
    for (Eigen::Index r = 0; r < nil.dim(); ++r)
      for (int trial = 0; trial < 5; ++trial) {
        VecZ x = random_vec(a.rank(), a.modulus(), rng);
        CHECK(nil.contains(a.multiply(VecZ(nil.basis().row(r).transpose()), x)));
      }
  }
}

TEST_CASE("idempotents and locality") {
  CHECK(idempotents(make_split(3, 2)).size() == 8);
  CHECK(idempotents(make_bullet(4, 3)).size() == 2);
  CHECK(is_local(make_power_quotient(3, 2)));
  CHECK(is_local(make_f4()));
  CHECK(!is_local(make_split(2, 2)));
  CHECK(is_local_prime_residue(make_power_quotient(3, 2)));
  CHECK(!is_local_prime_residue(make_f4()));  // residue field F_4
}

TEST_CASE("decompose_local: split factors, chains stay whole, x^2+x splits") {
  auto split_factors = decompose_local(make_split(3, 2));
  CHECK(split_factors.size() == 3);
  for (const auto& f : split_factors) CHECK(f.rank() == 1);

  auto chain = decompose_local(make_power_quotient(3, 5));
  CHECK(chain.size() == 1);
  CHECK(chain.front().rank() == 3);

  // F_2[x]/(x^2 + x): idempotents 0, 1, x, x+1 -> two rank-1 factors
  StructureTable t(2, 2);
  t.d(0) = Zmod(1, 2);
  t.at(0, 0, 0) = Zmod(1, 2);
  t.at(0, 1, 1) = Zmod(1, 2);
  t.at(1, 0, 1) = Zmod(1, 2);
  t.at(1, 1, 1) = Zmod(1, 2);  // x^2 = x
  BasedAlgebra a = BasedAlgebra::require(t, "x^2=x");
  CHECK(idempotents(a).size() == 4);
  auto factors = decompose_local(a);
  CHECK(factors.size() == 2);

  // factors multiply back to an isomorphic algebra
  BasedAlgebra rebuilt = product(factors[0], factors[1]);
  CHECK(isomorphic(rebuilt, a).has_value());
}

TEST_CASE("filtration of chains, bullet, and the rank-8 algebra") {
  for (int n : {2, 4}) CHECK(filtration(make_bullet(n, 3)).dims == std::vector<int>{1, n - 1});
  CHECK(filtration(make_power_quotient(4, 2)).dims == std::vector<int>{1, 1, 1, 1});
  CHECK(filtration(rank8_example()).dims == std::vector<int>{1, 4, 3});
  CHECK_THROWS_AS(filtration(make_split(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(filtration(make_f4()), std::invalid_argument);
}

namespace {

SymBilinearMap mult_map_of(const BasedAlgebra& a) {
  // V x V -> W for a local algebra, in the coordinates used by extraction.
  Filtration filt = filtration(a);
  const int m1 = filt.dims.size() > 1 ? filt.dims[1] : 0;
  const int m2 = filt.dims.size() > 2 ? filt.dims[2] : 0;
  SymBilinearMap f(m1, m2, a.modulus());
  if (m2 == 0) return f;
  // crude quotient coordinates via solve against [v-reps | m^2 basis]
  const Subspace& m1sp = filt.powers[0];
  const Subspace& m2sp = filt.powers[1];
  const Subspace& m3sp = filt.powers.size() > 2 ? filt.powers[2] : filt.powers.back();
  std::vector<VecZ> vreps, wreps;
  Subspace span = m2sp;
  for (Eigen::Index r = 0; r < m1sp.dim(); ++r) {
    VecZ v = m1sp.basis().row(r).transpose();
    if (span.contains(v)) continue;
    MatZ rowv = zeros(1, a.rank(), a.modulus());
    rowv.row(0) = v.transpose();
    span = span.sum(Subspace::from_span(rowv));
    vreps.push_back(v);
  }
  Subspace span2 = m3sp;
  for (Eigen::Index r = 0; r < m2sp.dim(); ++r) {
    VecZ v = m2sp.basis().row(r).transpose();
    if (span2.contains(v)) continue;
    MatZ rowv = zeros(1, a.rank(), a.modulus());
    rowv.row(0) = v.transpose();
    span2 = span2.sum(Subspace::from_span(rowv));
    wreps.push_back(v);
  }
  MatZ sys = zeros(a.rank(), static_cast<Eigen::Index>(wreps.size()) + m3sp.dim(), a.modulus());
  for (std::size_t k = 0; k < wreps.size(); ++k) sys.col(static_cast<Eigen::Index>(k)) = wreps[k];
  for (Eigen::Index j = 0; j < m3sp.dim(); ++j)
    sys.col(static_cast<Eigen::Index>(wreps.size()) + j) = m3sp.basis().row(j).transpose();
  for (int i = 0; i < m1; ++i)
    for (int j = i; j < m1; ++j) {
      auto sol = solve_affine(sys, a.multiply(vreps[i], vreps[j]));
      REQUIRE(sol.feasible());
      VecZ w = zvec(m2, a.modulus());
      for (int k = 0; k < m2; ++k) w(k) = (*sol.solution)(k);
      f.set_value(i, j, w);
    }
  return f;
}

}  // namespace

TEST_CASE("min_generating_subspace: zero map, diagonal map, bullet") {
  // zero map on F_2^3 -> F_2^2
  SymBilinearMap zero(3, 2, 2);
  CHECK(min_generating_subspace(zero).dim() == 0);

  // split-like diagonal map: (e_i, e_j) = delta_ij e_i; no line generates
  SymBilinearMap diag(2, 2, 2);
  diag.set_value(0, 0, basis_vec(2, 0, 2));
  diag.set_value(1, 1, basis_vec(2, 1, 2));
  diag.set_value(0, 1, zvec(2, 2));
  Subspace u = min_generating_subspace(diag);
  CHECK(u.dim() == 2);

  // bullet's multiplication map on m/m^2 is identically zero
  SymBilinearMap bullet_map = mult_map_of(make_bullet(4, 2));
  CHECK(bullet_map.dim_w == 0);
  CHECK(min_generating_subspace(bullet_map).dim() == 0);
}

TEST_CASE("good_basis: singleton, k[x,y]/m^3, and the re-checked chain") {
  // dim V = 1: vacuous chain
  SymBilinearMap single(1, 1, 3);
  single.set_value(0, 0, basis_vec(1, 0, 3));
  auto gb1 = good_basis(single);
  REQUIRE(gb1.has_value());
  CHECK(gb1->rows() == 1);

  // multiplication of k[x,y]/m^3: dim V = 2, dim W = 3
  BasedAlgebra kxy = make_truncated_local(2, Subspace(degree2_monomials(2), 2), 2);
  CHECK(kxy.rank() == 6);
  SymBilinearMap f = mult_map_of(kxy);
  CHECK(f.dim_v == 2);
  CHECK(f.dim_w == 3);
  auto gb = good_basis(f);
  REQUIRE(gb.has_value());
  CHECK(good_basis_chain_holds(f, *gb));
  // oracle: exhaustive over the q+1 = 3 lines, (x1, x2) outside span(x1^2)
  {
    bool found = false;
    VectorStream vs(2, 2);
    std::vector<VecZ> vecs;
    while (auto v = vs.next())
      if (!is_zero_vec(*v)) vecs.push_back(*v);
    for (const VecZ& x1 : vecs)
      for (const VecZ& x2 : vecs) {
        MatZ rows = zeros(2, 2, 2);
        rows.row(0) = x1.transpose();
        rows.row(1) = x2.transpose();
        if (rank_of(rows) != 2) continue;
        MatZ first = zeros(1, 2, 2);
        first.row(0) = x1.transpose();
        Subspace v1 = Subspace::from_span(first);
        if (!f.span_on(v1).contains(f.apply(x1, x2))) found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("good basis / minimal subspace bound on random maps") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    std::int64_t q = trial % 2 ? 3 : 2;
    int m = 1 + int(rng() % 4);
    int n = 1 + int(rng() % 3);
    SymBilinearMap f(m, n, q);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) f.set_value(i, j, random_vec(n, q, rng));
    Subspace u = min_generating_subspace(f);
    CHECK(f.span_on(u) == f.image());
    CHECK(u.dim() <= f.image().dim() + 1);
    // the restriction to U meets the good-basis preconditions
    SymBilinearMap restricted = f.restrict_to(u);
    auto gb = good_basis(restricted);
    REQUIRE(gb.has_value());
    CHECK(good_basis_chain_holds(restricted, *gb));
  }
}

TEST_CASE("extract_canonical: bullet, chains, and invariants") {
  for (int n : {2, 3, 5}) {
    Extraction e = extract_canonical(make_bullet(n, 2));
    CHECK(e.data.m_seq == std::vector<int>{1, n - 1});
    CHECK(e.data.s == 0);
    CHECK(e.data.w_dims == std::vector<int>{0});
    CHECK(e.data.constants.empty());
  }
  Extraction x4 = extract_canonical(make_power_quotient(4, 2));
  CHECK(x4.data.m_seq == std::vector<int>{1, 1, 1, 1});
  CHECK(x4.data.s == 1);
  CHECK(x4.data.w_dims == std::vector<int>{0, 1});
  // x * x = x^2, x^2 * x = x^3, x^3 * x = 0
  CHECK(x4.data.constants.size() == 2);
  CHECK(x4.data.constants.at({1, 1, 1, 2, 1}) == 1);
  CHECK(x4.data.constants.at({2, 1, 1, 3, 1}) == 1);

  Extraction r8 = extract_canonical(rank8_example());
  CHECK(r8.data.m_seq == std::vector<int>{1, 4, 3});
  CHECK(r8.data.s == 4);
  CHECK(r8.data.w_dims.size() == 5);
  CHECK(r8.data.w_dims.back() == 3);
  for (std::size_t i = 2; i < r8.data.w_dims.size(); ++i) CHECK(r8.data.w_dims[i] > r8.data.w_dims[i - 1]);
  CHECK(r8.data.s <= r8.data.m_seq[2] + 1);
}

TEST_CASE("rank-8 canonical data matches the frozen golden file") {
  Extraction r8 = extract_canonical(rank8_example());
  std::ifstream in(std::string(ALGMOD_TEST_DATA) + "/rank8_canonical.json");
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CanonicalData golden = CanonicalData::from_json(text);
  CHECK(r8.data == golden);
}

TEST_CASE("reconstruct: inverse to extraction up to isomorphism") {
  std::vector<BasedAlgebra> locals = {make_bullet(2, 2),  make_bullet(4, 3), make_power_quotient(3, 2),
                                      make_power_quotient(4, 2), make_split(1, 5),
                                      make_truncated_local(2, Subspace(3, 3), 3)};
  for (const BasedAlgebra& a : locals) {
    Extraction e = extract_canonical(a);
    BasedAlgebra back = reconstruct(e.data);
    CHECK(back.rank() == a.rank());
    CHECK(isomorphic(back, a).has_value());
    // serialization round trip
    CHECK(CanonicalData::from_json(e.data.to_json()) == e.data);
  }
  // the rank-8 algebra round-trips through the structured isomorphism search
  BasedAlgebra r8 = rank8_example();
  Extraction e8 = extract_canonical(r8);
  BasedAlgebra back8 = reconstruct(e8.data);
  CHECK(isomorphic(back8, r8).has_value());
}

TEST_CASE("reconstruct rejects inconsistent data") {
  Extraction e = extract_canonical(make_power_quotient(4, 2));
  CanonicalData bad = e.data;
  bad.constants.erase({1, 1, 1, 2, 1});  // g_11 g_11 no longer realizes g_21
  CHECK_THROWS_AS(reconstruct(bad), std::invalid_argument);

  CanonicalData shape = e.data;
  shape.constants[{1, 1, 1, 1, 1}] = 1;  // u = 1 is outside the allowed block
  CHECK_THROWS_AS(reconstruct(shape), std::invalid_argument);

  CanonicalData badw = e.data;
  badw.w_dims = {0, 0};
  CHECK_THROWS_AS(reconstruct(badw), std::invalid_argument);
}

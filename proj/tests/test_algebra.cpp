#include <doctest.h>

#include <algmod/action.hpp>
#include <algmod/classify.hpp>

#include <random>

using namespace algmod;

namespace {

VecZ random_vec(int n, std::int64_t q, std::mt19937& rng) {
  VecZ v = zvec(n, q);
  for (int i = 0; i < n; ++i) v(i) = Zmod(std::int64_t(rng() % q), q);
  return v;
}

// F_4 on the basis (1, w) with w^2 = 1 + w.
BasedAlgebra make_f4() {
  StructureTable t(2, 2);
  t.d(0) = Zmod(1, 2);
  t.at(0, 0, 0) = Zmod(1, 2);
  t.at(0, 1, 1) = Zmod(1, 2);
  t.at(1, 0, 1) = Zmod(1, 2);
  t.at(1, 1, 0) = Zmod(1, 2);
  t.at(1, 1, 1) = Zmod(1, 2);
  return BasedAlgebra::require(t, "F_4");
}

Subspace monomial_span(int d, std::int64_t q, const std::vector<std::vector<int>>& combos) {
  // each combo is a coefficient vector in the degree-2 monomial coordinates
  Eigen::Index monos = degree2_monomials(d);
  if (combos.empty()) return Subspace(monos, q);
  MatZ rows = zeros(static_cast<Eigen::Index>(combos.size()), monos, q);
  for (std::size_t r = 0; r < combos.size(); ++r)
    for (Eigen::Index c = 0; c < monos; ++c) rows(static_cast<Eigen::Index>(r), c) = Zmod(combos[r][c], q);
  return Subspace::from_span(rows);
}

// degree-2 monomial coordinate index for x_a x_b (0-based, a <= b)
int mono_idx(int d, int a, int b) {
  if (a > b) std::swap(a, b);
  int idx = 0;
  for (int i = 0; i < a; ++i) idx += d - i;
  return idx + (b - a);
}

std::vector<int> mono_vec(int d, std::initializer_list<std::pair<int, std::pair<int, int>>> terms) {
  std::vector<int> v(static_cast<std::size_t>(degree2_monomials(d)), 0);
  for (auto [coeff, ab] : terms) v[static_cast<std::size_t>(mono_idx(d, ab.first, ab.second))] = coeff;
  return v;
}

BasedAlgebra rank8_example() {
  // k[a,b,c,d]/(a^2, ab, b^2, c^2, cd, d^2, ad - bc)
  const int d = 4;
  std::vector<std::vector<int>> rel = {
      mono_vec(d, {{1, {0, 0}}}),                 // a^2
      mono_vec(d, {{1, {0, 1}}}),                 // ab
      mono_vec(d, {{1, {1, 1}}}),                 // b^2
      mono_vec(d, {{1, {2, 2}}}),                 // c^2
      mono_vec(d, {{1, {2, 3}}}),                 // cd
      mono_vec(d, {{1, {3, 3}}}),                 // d^2
      mono_vec(d, {{1, {0, 3}}, {1, {1, 2}}}),    // ad - bc (= ad + bc mod 2)
  };
  return make_truncated_local(4, monomial_span(4, 2, rel), 2);
}

}  // namespace

TEST_CASE("validate accepts split and bullet, rejects a flipped cell") {
  CHECK(BasedAlgebra::validate(make_split(3, 2).table()).has_value());
  CHECK(BasedAlgebra::validate(make_bullet(4, 2).table()).has_value());

  StructureTable bad = make_split(3, 2).table();
  bad.at(0, 1, 0) = Zmod(1, 2);  // reported 1-based as c[1][2][1]
  std::vector<Violation> v;
  CHECK(!BasedAlgebra::validate(bad, &v).has_value());
  bool found = false;
  for (const auto& viol : v)
    if (viol.kind == Violation::Kind::commutativity && viol.idx[0] == 1 && viol.idx[1] == 0 && viol.idx[2] == 0)
      found = true;
  CHECK(found);
  CHECK(!table_violations(make_split(3, 2).table()).size());
}

TEST_CASE("violation list is empty exactly on acceptance") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    StructureTable t(2, 3);
    for (auto& c : t.c) c = Zmod(std::int64_t(rng() % 3), 3);
    for (int i = 0; i < 2; ++i) t.d(i) = Zmod(std::int64_t(rng() % 3), 3);
    std::vector<Violation> v;
    auto a = BasedAlgebra::validate(t, &v);
    CHECK(a.has_value() == v.empty());
  }
}

TEST_CASE("multiply: unit law, bullet annihilation, F_4 arithmetic") {
  std::mt19937 rng(3);
  for (auto [n, q] : std::vector<std::pair<int, std::int64_t>>{{3, 2}, {4, 5}}) {
    BasedAlgebra a = make_split(n, q);
    for (int trial = 0; trial < 10; ++trial) {
      VecZ v = random_vec(n, q, rng);
      CHECK(a.multiply(a.one(), v) == v);
    }
  }
  BasedAlgebra bullet3 = make_bullet(3, 5);
  VecZ x1 = zvec(3, 5), x2 = zvec(3, 5);
  x1(1) = Zmod(1, 5);
  x2(2) = Zmod(1, 5);
  CHECK(is_zero_vec(bullet3.multiply(x1, x2)));

  BasedAlgebra f4 = make_f4();
  VecZ w = zvec(2, 2);
  w(1) = Zmod(1, 2);
  VecZ w2 = f4.multiply(w, w);
  CHECK(w2(0) == Zmod(1, 2));
  CHECK(w2(1) == Zmod(1, 2));  // w^2 = 1 + w
  CHECK_THROWS_AS(f4.multiply(zvec(3, 2), w), std::invalid_argument);
}

TEST_CASE("multiplication is associative and commutative on random vectors") {
  std::mt19937 rng(19);
  std::vector<BasedAlgebra> algs = {make_split(3, 5), make_bullet(4, 3), make_f4(),
                                    make_cubic(Zmod(2, 5), Zmod(1, 5), Zmod(4, 5), Zmod(3, 5), 5)};
  for (const auto& a : algs)
    for (int trial = 0; trial < 25; ++trial) {
      VecZ u = random_vec(a.rank(), a.modulus(), rng);
      VecZ v = random_vec(a.rank(), a.modulus(), rng);
      VecZ w = random_vec(a.rank(), a.modulus(), rng);
      CHECK(a.multiply(u, v) == a.multiply(v, u));
      CHECK(a.multiply(u, a.multiply(v, w)) == a.multiply(a.multiply(u, v), w));
    }
}

TEST_CASE("discriminant of split and bullet across small ranks") {
  for (std::int64_t q : {2, 3, 5})
    for (int n = 2; n <= 6; ++n) {
      CHECK(discriminant(make_split(n, q)) == Zmod(1, q));
      CHECK(discriminant(make_bullet(n, q)).is_zero());
      CHECK(is_etale(make_split(n, q)));
      CHECK(!is_etale(make_bullet(n, q)));
    }
}

TEST_CASE("discriminant of F_4 against the frozen trace gram") {
  BasedAlgebra f4 = make_f4();
  // Tr(mult-by-1) = 2 = 0, Tr(mult-by-w) = 1: gram [[0,1],[1,1]], det = -1 = 1.
  CHECK(f4.trace_vec()(0).is_zero());
  CHECK(f4.trace_vec()(1) == Zmod(1, 2));
  CHECK(discriminant(f4) == Zmod(1, 2));
}

TEST_CASE("product concatenates and multiplies discriminant behavior") {
  BasedAlgebra s5 = make_split(5, 2);
  BasedAlgebra p = product(make_split(2, 2), make_split(3, 2));
  CHECK(p.rank() == 5);
  auto witness = isomorphic(p, s5);
  REQUIRE(witness.has_value());

  std::mt19937 rng(23);
  std::vector<BasedAlgebra> pool = {make_split(2, 2), make_f4(), make_bullet(2, 2), make_bullet(3, 2),
                                    make_split(1, 2)};
  for (int trial = 0; trial < 20; ++trial) {
    const BasedAlgebra& a = pool[rng() % pool.size()];
    const BasedAlgebra& b = pool[rng() % pool.size()];
    BasedAlgebra ab = product(a, b);
    bool lhs = !discriminant(ab).is_zero();
    bool rhs = !discriminant(a).is_zero() && !discriminant(b).is_zero();
    CHECK(lhs == rhs);
  }
}

TEST_CASE("make_bullet(2, 2) is the dual numbers") {
  BasedAlgebra d = make_bullet(2, 2);
  VecZ x = zvec(2, 2);
  x(1) = Zmod(1, 2);
  CHECK(is_zero_vec(d.multiply(x, x)));
  CHECK(d.normalized());
}

TEST_CASE("make_truncated_local small cases") {
  // d=1, no relations: k[x]/x^3
  BasedAlgebra a = make_truncated_local(1, Subspace(1, 3), 3);
  CHECK(a.rank() == 3);
  CHECK(a.table() == make_power_quotient(3, 3).table());
  auto filt = filtration(a);
  CHECK(filt.dims == std::vector<int>{1, 1, 1});

  // d=2, V = span{x1^2}: rank 5, m^2 of dimension 2
  std::vector<std::vector<int>> rel = {mono_vec(2, {{1, {0, 0}}})};
  BasedAlgebra b = make_truncated_local(2, monomial_span(2, 3, rel), 3);
  CHECK(b.rank() == 5);
  CHECK(filtration(b).dims == std::vector<int>{1, 2, 2});

  // the rank-8 witness of reducibility
  BasedAlgebra c = rank8_example();
  CHECK(c.rank() == 8);
  CHECK(filtration(c).dims == std::vector<int>{1, 4, 3});
  // bc = ad in the quotient
  VecZ vb = zvec(8, 2), vc = zvec(8, 2);
  vb(2) = Zmod(1, 2);
  vc(3) = Zmod(1, 2);
  VecZ prod = c.multiply(vb, vc);
  CHECK(!is_zero_vec(prod));
}

TEST_CASE("truncated local family: filtration is (1, d, r) and m^3 = 0") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    int d = 1 + int(rng() % 3);
    std::int64_t q = trial % 2 ? 2 : 3;
    Eigen::Index monos = degree2_monomials(d);
    MatZ rows = zeros(2, monos, q);
    for (Eigen::Index i = 0; i < rows.size(); ++i) rows(i) = Zmod(std::int64_t(rng() % q), q);
    Subspace rel = Subspace::from_span(rows);
    BasedAlgebra a = make_truncated_local(d, rel, q);
    int r = static_cast<int>(monos - rel.dim());
    CHECK(a.rank() == 1 + d + r);
    auto filt = filtration(a);
    std::vector<int> want = {1, d, r};
    while (!want.empty() && want.back() == 0) want.pop_back();
    CHECK(filt.dims == want);
    CHECK(filt.dims.size() <= 3);  // m^3 = 0
  }
}

TEST_CASE("make_cubic: bullet at zero, valid everywhere, F_2 spot value") {
  CHECK(make_cubic(Zmod(0, 5), Zmod(0, 5), Zmod(0, 5), Zmod(0, 5), 5).table() == make_bullet(3, 5).table());
  std::mt19937 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    auto r = [&] { return Zmod(std::int64_t(rng() % 5), 5); };
    CHECK(BasedAlgebra::validate(make_cubic(r(), r(), r(), r(), 5).table()).has_value());
  }
  BasedAlgebra a = make_cubic(Zmod(1, 2), Zmod(0, 2), Zmod(0, 2), Zmod(1, 2), 2);
  CHECK(a.table().at(1, 2, 0) == Zmod(1, 2));  // alpha beta = -ad = 1
  CHECK(a.table().at(1, 2, 1).is_zero());
  CHECK(a.table().at(1, 2, 2).is_zero());
}

TEST_CASE("generates: bullet needs all n-1 non-unit vectors, chains need one") {
  for (int n : {4, 5}) {
    BasedAlgebra bullet = make_bullet(n, 2);
    std::vector<VecZ> gens;
    for (int i = 1; i < n; ++i) {
      VecZ e = zvec(n, 2);
      e(i) = Zmod(1, 2);
      gens.push_back(e);
    }
    CHECK(generates(bullet, gens));
    for (int skip = 1; skip < n; ++skip) {
      std::vector<VecZ> fewer;
      for (int i = 1; i < n; ++i)
        if (i != skip) fewer.push_back(gens[i - 1]);
      CHECK(!generates(bullet, fewer));
    }
  }
  for (int n : {3, 4, 5}) {
    BasedAlgebra chain = make_power_quotient(n, 3);
    VecZ x = zvec(n, 3);
    x(1) = Zmod(1, 3);
    CHECK(generates(chain, {x}));
    CHECK(generates(chain, {}) == (n == 1));
  }
}

TEST_CASE("scale_weighted: identity at t=1, bullet at t=0, validity for all t") {
  BasedAlgebra a = make_cubic(Zmod(2, 5), Zmod(3, 5), Zmod(1, 5), Zmod(4, 5), 5);
  CHECK(scale_weighted(a, Zmod(1, 5)) == a.table());
  CHECK(scale_weighted(a, Zmod(0, 5)) == make_bullet(3, 5).table());
  for (std::int64_t tv = 0; tv < 5; ++tv) {
    auto scaled = scale_weighted(a, Zmod(tv, 5));
    CHECK(BasedAlgebra::validate(scaled).has_value());
  }
  // action law: scaling by s then t equals scaling by st
  for (std::int64_t sv : {2, 3})
    for (std::int64_t tv : {0, 1, 4}) {
      BasedAlgebra mid = BasedAlgebra::require(scale_weighted(a, Zmod(sv, 5)), "scaled");
      CHECK(scale_weighted(mid, Zmod(tv, 5)) == scale_weighted(a, Zmod(sv * tv, 5)));
    }
  CHECK_THROWS_AS(scale_weighted(make_split(3, 5), Zmod(2, 5)), std::invalid_argument);
}

TEST_CASE("normalize produces B_n^1 form with an act witness") {
  std::mt19937 rng(53);
  BasedAlgebra split = make_split(3, 5);
  CHECK(!split.normalized());
  for (int trial = 0; trial < 10; ++trial) {
    MatZ m = zeros(3, 3, 5);
    do {
      for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Zmod(std::int64_t(rng() % 5), 5);
    } while (det(m).is_zero());
    BasedAlgebra moved = act(m, split);
    Normalized norm = normalize(moved);
    CHECK(norm.algebra.normalized());
    CHECK(act(norm.witness, moved).table() == norm.algebra.table());
  }
}

TEST_CASE("table json round trip and rejection of malformed input") {
  StructureTable t = make_cubic(Zmod(1, 3), Zmod(2, 3), Zmod(0, 3), Zmod(2, 3), 3).table();
  StructureTable back = table_from_json(table_to_json(t));
  CHECK(back == t);

  CHECK_THROWS_AS(table_from_json(R"({"n":1,"modulus":2,"c":[[[2]]],"d":[1]})"), std::invalid_argument);
  CHECK_THROWS_AS(table_from_json(R"({"n":2,"modulus":2,"c":[[[0,0]]],"d":[1,0]})"), std::invalid_argument);
  CHECK_THROWS_AS(table_from_json(R"({"n":1,"modulus":2,"c":[[[0]]],"d":[-1]})"), std::invalid_argument);
}

#include <algmod/action.hpp>

#include <algorithm>

namespace algmod {

BasedAlgebra act(const InvertibleMatrix& m, const BasedAlgebra& a) {
  const int n = a.rank();
  if (m.mat.rows() != n || m.mat.cols() != n)
    throw std::invalid_argument("act: matrix dimension does not match the algebra rank");
  if (n > 0 && m.mat(0, 0).modulus() != a.modulus())
    throw std::invalid_argument("act: modulus mismatch");
  StructureTable t(n, a.modulus());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      VecZ prod = m.mat * a.multiply(m.inv.col(i), m.inv.col(j));
      t.set_row(i, j, prod);
      t.set_row(j, i, prod);
    }
  VecZ d = m.mat * a.one();
  for (int i = 0; i < n; ++i) t.d(i) = d(i);
  return BasedAlgebra::require(t, "transformed table");
}

InvariantSig invariant_sig(const BasedAlgebra& a, std::int64_t budget) {
  InvariantSig sig;
  sig.delta_nonzero = !discriminant(a).is_zero();
  Subspace nil = nilradical(a);
  sig.nilradical_dim = nil.dim();
  sig.filtration.push_back(static_cast<int>(a.rank() - nil.dim()));
  Subspace cur = nil;
  while (cur.dim() > 0) {
    std::vector<VecZ> prods;
    MatZ rows = zeros(cur.dim() * nil.dim(), a.rank(), a.modulus());
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < cur.dim(); ++r)
      for (Eigen::Index s = 0; s < nil.dim(); ++s)
        rows.row(k++) = a.multiply(cur.basis().row(r).transpose(), nil.basis().row(s).transpose()).transpose();
    Subspace next = rows.rows() ? Subspace::from_span(rows) : Subspace(a.rank(), a.modulus());
    sig.filtration.push_back(static_cast<int>(cur.dim() - next.dim()));
    cur = next;
  }
  sig.idempotent_count = static_cast<std::int64_t>(idempotents(a, budget).size());
  return sig;
}

namespace {

// Column-by-column search for matrices M with mu_B(M e_i, M e_j) = M mu_A(e_i, e_j)
// and M d_A = d_B. Each product identity is checked at the first depth where
// every column it mentions has been placed.
struct HomSearch {
  const BasedAlgebra& a;
  const BasedAlgebra& b;
  int n;
  std::int64_t q;
  bool fix_first;  // restrict to H (first column e_1); valid for normalized tables
  bool find_all;
  std::int64_t node_budget;

  std::vector<std::vector<std::pair<int, int>>> pair_schedule;  // depth -> pairs (i <= j)
  int unit_depth = 0;
  std::vector<VecZ> cols;
  std::vector<VecZ> candidates;
  std::vector<MatZ> found;
  std::int64_t nodes = 0;

  HomSearch(const BasedAlgebra& a_, const BasedAlgebra& b_, bool fix_first_, bool find_all_, std::int64_t budget)
      : a(a_), b(b_), n(a_.rank()), q(a_.modulus()), fix_first(fix_first_), find_all(find_all_),
        node_budget(budget) {
    pair_schedule.assign(n, {});
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        int depth = j;
        for (int m = 0; m < n; ++m)
          if (!a.table().at(i, j, m).is_zero()) depth = std::max(depth, m);
        pair_schedule[depth].emplace_back(i, j);
      }
    unit_depth = 0;
    for (int i = 0; i < n; ++i)
      if (!a.one()(i).is_zero()) unit_depth = i;
    cols.assign(n, zvec(n, q));
    VectorStream vs(n, q);
    while (auto v = vs.next()) candidates.push_back(*v);
  }

  bool pair_ok(int i, int j) const {
    VecZ lhs = b.multiply(cols[i], cols[j]);
    VecZ rhs = zvec(n, q);
    for (int m = 0; m < n; ++m)
      if (!a.table().at(i, j, m).is_zero()) rhs += a.table().at(i, j, m) * cols[m];
    return lhs == rhs;
  }

  bool unit_ok() const {
    VecZ img = zvec(n, q);
    for (int i = 0; i < n; ++i)
      if (!a.one()(i).is_zero()) img += a.one()(i) * cols[i];
    return img == b.one();
  }

  bool checks_at(int depth) {
    for (auto [i, j] : pair_schedule[depth])
      if (!pair_ok(i, j)) return false;
    if (depth == unit_depth && !unit_ok()) return false;
    return true;
  }

  // returns true to stop the whole search (first witness found, !find_all)
  bool dfs(int depth, const Subspace& span) {
    if (depth == n) {
      MatZ m = zeros(n, n, q);
      for (int c = 0; c < n; ++c) m.col(c) = cols[c];
      found.push_back(m);
      return !find_all;
    }
    if (depth == 0 && fix_first) {
      VecZ e0 = zvec(n, q);
      e0(0) = Zmod(1, q);
      cols[0] = e0;
      MatZ rowv = zeros(1, n, q);
      rowv.row(0) = e0.transpose();
      if (!checks_at(0)) return false;
      return dfs(1, Subspace::from_span(rowv));
    }
    for (const VecZ& cand : candidates) {
      if (++nodes > node_budget) throw budget_error("isomorphism search exceeded the node budget");
      if (span.contains(cand)) continue;
      cols[depth] = cand;
      if (!checks_at(depth)) continue;
      MatZ rowv = zeros(1, n, q);
      rowv.row(0) = cand.transpose();
      if (dfs(depth + 1, span.sum(Subspace::from_span(rowv)))) return true;
    }
    return false;
  }

  std::vector<MatZ> run() {
    if (n == 0) {
      found.push_back(zeros(0, 0, q));
      return found;
    }
    dfs(0, Subspace(n, q));
    return found;
  }
};

bool same_table(const BasedAlgebra& x, const BasedAlgebra& y) { return x.table() == y.table(); }

// Isomorphism of two local algebras with prime residue field and m^3 = 0: an
// iso is (g, h) in GL(m/m^2) x GL(m^2) with h(uv) = (gu)(gv); the translation
// part never enters products. Complete search over GL(m/m^2).
std::optional<MatZ> iso_bilinear_pair(const BasedAlgebra& a, const BasedAlgebra& b, std::int64_t budget) {
  const int n = a.rank();
  const std::int64_t q = a.modulus();
  Filtration fa = filtration(a), fb = filtration(b);
  if (fa.dims != fb.dims || fa.dims.size() > 3) return std::nullopt;
  const int m1 = fa.dims.size() > 1 ? fa.dims[1] : 0;
  const int m2 = fa.dims.size() > 2 ? fa.dims[2] : 0;

  auto adapted = [&](const BasedAlgebra& alg, const Filtration& filt) {
    MatZ basis = zeros(n, n, q);
    basis.col(0) = alg.one();
    int col = 1;
    const Subspace zero(n, q);
    const Subspace& m2sp = filt.dims.size() > 2 ? filt.powers[1] : zero;
    // V-representatives: rows of m extending m^2; then the m^2 basis itself.
    Subspace span = m2sp;
    for (Eigen::Index r = 0; r < filt.powers[0].dim(); ++r) {
      VecZ v = filt.powers[0].basis().row(r).transpose();
      if (span.contains(v)) continue;
      MatZ rowv = zeros(1, n, q);
      rowv.row(0) = v.transpose();
      span = span.sum(Subspace::from_span(rowv));
      basis.col(col++) = v;
    }
    for (Eigen::Index r = 0; r < m2sp.dim(); ++r) basis.col(col++) = m2sp.basis().row(r).transpose();
    if (col != n) throw std::logic_error("iso_bilinear_pair: adapted basis incomplete");
    return basis;
  };
  MatZ ta = adapted(a, fa), tb = adapted(b, fb);
  MatZ ta_inv = inverse(ta), tb_inv = inverse(tb);

  auto bilinear = [&](const BasedAlgebra& alg, const MatZ& t, const MatZ& tinv) {
    SymBilinearMap f(m1, m2, q);
    for (int i = 0; i < m1; ++i)
      for (int j = i; j < m1; ++j) {
        VecZ prod = tinv * alg.multiply(t.col(1 + i), t.col(1 + j));
        VecZ w = zvec(m2, q);
        for (int k = 0; k < m2; ++k) w(k) = prod(1 + m1 + k);
        f.set_value(i, j, w);
      }
    return f;
  };
  SymBilinearMap faa = bilinear(a, ta, ta_inv), fbb = bilinear(b, tb, tb_inv);

  const int pairs = m1 * (m1 + 1) / 2;
  MatZ lhs_t = zeros(pairs, m2, q);  // rows: f_A values
  {
    int r = 0;
    for (int i = 0; i < m1; ++i)
      for (int j = i; j < m1; ++j) lhs_t.row(r++) = faa.value(i, j).transpose();
  }
  GlStream gs(m1, q, budget);
  while (auto g = gs.next()) {
    MatZ rhs_t = zeros(pairs, m2, q);
    int r = 0;
    VecZ gu = zvec(m1, q), gv = zvec(m1, q);
    for (int i = 0; i < m1; ++i)
      for (int j = i; j < m1; ++j) {
        rhs_t.row(r++) = fbb.apply(g->col(i), g->col(j)).transpose();
      }
    // Solve h * f_A(pair) = f_B(g pair): columns of h^T from lhs_t x = rhs_col.
    MatZ ht = zeros(m2, m2, q);
    bool ok = true;
    for (int c = 0; c < m2 && ok; ++c) {
      auto sol = solve_affine(lhs_t, VecZ(rhs_t.col(c)));
      if (!sol.feasible()) {
        ok = false;
        break;
      }
      ht.col(c) = *sol.solution;
    }
    if (!ok) continue;
    MatZ h = ht.transpose();
    if (det(h).is_zero()) continue;
    MatZ phi = zeros(n, n, q);
    phi(0, 0) = Zmod(1, q);
    for (int i = 0; i < m1; ++i)
      for (int j = 0; j < m1; ++j) phi(1 + i, 1 + j) = (*g)(i, j);
    for (int i = 0; i < m2; ++i)
      for (int j = 0; j < m2; ++j) phi(1 + m1 + i, 1 + m1 + j) = h(i, j);
    MatZ m = tb * phi * ta_inv;
    InvertibleMatrix im(m);
    if (same_table(act(im, a), b)) return m;
  }
  return std::nullopt;
}

}  // namespace

std::optional<MatZ> isomorphic(const BasedAlgebra& a, const BasedAlgebra& b, std::int64_t budget) {
  if (a.rank() != b.rank() || a.modulus() != b.modulus()) return std::nullopt;
  const int n = a.rank();
  const std::int64_t q = a.modulus();
  if (n == 0) return zeros(0, 0, q);
  if (!(invariant_sig(a, budget) == invariant_sig(b, budget))) return std::nullopt;
  Normalized na = normalize(a), nb = normalize(b);

  std::int64_t space = 1;
  bool small = true;
  for (int i = 0; i < n * (n - 1) && small; ++i) {
    space *= q;
    if (space > budget) small = false;
  }
  std::optional<MatZ> witness;
  if (small) {
    HomSearch search(na.algebra, nb.algebra, /*fix_first=*/true, /*find_all=*/false, budget);
    auto res = search.run();
    if (!res.empty()) witness = inverse(nb.witness) * res.front() * na.witness;
  } else if (is_local_prime_residue(a) && is_local_prime_residue(b)) {
    auto m = iso_bilinear_pair(na.algebra, nb.algebra, budget);
    if (m) witness = inverse(nb.witness) * *m * na.witness;
    else return std::nullopt;
  } else {
    throw budget_error("isomorphic: search space exceeds budget and no structured fallback applies");
  }
  if (!witness) return std::nullopt;
  InvertibleMatrix im(*witness);
  if (!same_table(act(im, a), b)) throw std::logic_error("isomorphic: witness failed re-verification");
  return witness;
}

std::vector<MatZ> automorphisms(const BasedAlgebra& a, std::int64_t budget) {
  HomSearch search(a, a, /*fix_first=*/false, /*find_all=*/true, budget);
  auto found = search.run();
  std::vector<MatZ> out;
  for (const MatZ& m : found) {
    if (a.rank() > 0 && det(m).is_zero()) continue;
    InvertibleMatrix im(m);
    if (!same_table(act(im, a), a)) throw std::logic_error("automorphisms: witness failed re-verification");
    out.push_back(m);
  }
  return out;
}

bool check_split_stabilizer(int n, std::int64_t q, std::int64_t budget) {
  if (n < 1) throw std::invalid_argument("check_split_stabilizer: n must be >= 1");
  BasedAlgebra split = make_split(n, q);
  auto auts = automorphisms(split, budget);
  std::int64_t factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  if (static_cast<std::int64_t>(auts.size()) != factorial) return false;
  for (const MatZ& m : auts) {
    for (Eigen::Index c = 0; c < n; ++c) {
      int ones = 0, nonzero = 0;
      for (Eigen::Index r = 0; r < n; ++r) {
        if (!m(r, c).is_zero()) ++nonzero;
        if (m(r, c) == Zmod(1, q)) ++ones;
      }
      if (nonzero != 1 || ones != 1) return false;
    }
  }
  return true;
}

}  // namespace algmod

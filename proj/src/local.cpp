#include <algmod/local.hpp>

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace algmod {

namespace {

MatZ single_row(const VecZ& v) {
  MatZ m = zeros(1, v.size(), v(0).typed() ? v(0).modulus() : 2);
  for (Eigen::Index i = 0; i < v.size(); ++i) m(0, i) = v(i);
  return m;
}

Subspace span_of_vectors(const std::vector<VecZ>& vs, Eigen::Index ambient, std::int64_t q) {
  if (vs.empty() || ambient == 0) return Subspace(ambient, q);
  MatZ rows = zeros(static_cast<Eigen::Index>(vs.size()), ambient, q);
  for (std::size_t i = 0; i < vs.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  return Subspace::from_span(rows);
}

}  // namespace

Subspace nilradical(const BasedAlgebra& a) {
  const int n = a.rank();
  const std::int64_t p = a.modulus();
  require_prime(p, "nilradical");
  if (n == 0) return Subspace(0, p);
  // Frobenius x -> x^p is F_p-linear; iterate until p^k >= n.
  MatZ frob = zeros(n, n, p);
  for (int i = 0; i < n; ++i) {
    VecZ e = zvec(n, p);
    e(i) = Zmod(1, p);
    frob.col(i) = a.power(e, static_cast<int>(p));
  }
  MatZ m = eye(n, p);
  std::int64_t pk = 1;
  while (pk < n) {
    m = frob * m;
    pk *= p;
  }
  Subspace ker = rre_form(m).kernel;
  for (Eigen::Index r = 0; r < ker.dim(); ++r) {
    VecZ x = ker.basis().row(r).transpose();
    VecZ xn = a.power(x, n);
    for (Eigen::Index i = 0; i < xn.size(); ++i)
      if (!xn(i).is_zero()) throw std::logic_error("nilradical: basis element with x^n != 0");
  }
  return ker;
}

std::vector<VecZ> idempotents(const BasedAlgebra& a, std::int64_t budget) {
  const int n = a.rank();
  const std::int64_t q = a.modulus();
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= q;
    if (total > budget) throw budget_error("idempotents: q^n exceeds budget");
  }
  std::vector<VecZ> out;
  VectorStream vs(n, q);
  while (auto v = vs.next()) {
    if (a.multiply(*v, *v) == *v) out.push_back(*v);
  }
  return out;
}

bool is_local(const BasedAlgebra& a, std::int64_t budget) {
  return idempotents(a, budget).size() == 2;
}

bool is_local_prime_residue(const BasedAlgebra& a) {
  return a.rank() >= 1 && nilradical(a).dim() == a.rank() - 1;
}

std::vector<BasedAlgebra> decompose_local(const BasedAlgebra& a, std::int64_t budget) {
  const int n = a.rank();
  const std::int64_t q = a.modulus();
  auto idems = idempotents(a, budget);
  std::vector<VecZ> primitive;
  for (const VecZ& e : idems) {
    bool zero = true;
    for (Eigen::Index i = 0; i < e.size(); ++i) zero = zero && e(i).is_zero();
    if (zero) continue;
    bool prim = true;
    for (const VecZ& f : idems) {
      bool fzero = true, same = true;
      for (Eigen::Index i = 0; i < f.size(); ++i) {
        fzero = fzero && f(i).is_zero();
        same = same && f(i) == e(i);
      }
      if (fzero || same) continue;
      if (a.multiply(f, e) == f) {
        prim = false;
        break;
      }
    }
    if (prim) primitive.push_back(e);
  }
  // Orthogonality and completeness of the primitive system.
  VecZ sum = zvec(n, q);
  for (const VecZ& e : primitive) sum += e;
  if (n > 0 && sum != a.one()) throw std::logic_error("decompose_local: primitive idempotents do not sum to 1");
  for (std::size_t i = 0; i < primitive.size(); ++i)
    for (std::size_t j = i + 1; j < primitive.size(); ++j) {
      VecZ prod = a.multiply(primitive[i], primitive[j]);
      for (Eigen::Index k = 0; k < prod.size(); ++k)
        if (!prod(k).is_zero()) throw std::logic_error("decompose_local: primitive idempotents not orthogonal");
    }
  std::vector<BasedAlgebra> factors;
  int total_rank = 0;
  for (const VecZ& e : primitive) {
    std::vector<VecZ> image;
    for (int i = 0; i < n; ++i) {
      VecZ ei = zvec(n, q);
      ei(i) = Zmod(1, q);
      image.push_back(a.multiply(e, ei));
    }
    Subspace sub = span_of_vectors(image, n, q);
    const int k = static_cast<int>(sub.dim());
    MatZ basis_cols = zeros(n, k, q);
    for (int c = 0; c < k; ++c) basis_cols.col(c) = sub.basis().row(c).transpose();
    auto coords = [&](const VecZ& x) {
      auto sol = solve_affine(basis_cols, x);
      if (!sol.feasible()) throw std::logic_error("decompose_local: product left the factor");
      return *sol.solution;
    };
    StructureTable t(k, q);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        VecZ prod = a.multiply(basis_cols.col(i), basis_cols.col(j));
        t.set_row(i, j, coords(prod));
      }
    VecZ unit = coords(e);
    for (int i = 0; i < k; ++i) t.d(i) = unit(i);
    factors.push_back(BasedAlgebra::require(t, "local factor"));
    total_rank += k;
  }
  if (total_rank != n) throw std::logic_error("decompose_local: factor ranks do not sum to n");
  return factors;
}

Filtration filtration(const BasedAlgebra& a) {
  if (!is_local_prime_residue(a))
    throw std::invalid_argument("filtration: algebra is not local with residue field F_p");
  const int n = a.rank();
  const std::int64_t q = a.modulus();
  Subspace m = nilradical(a);
  Filtration out;
  out.dims.push_back(1);
  Subspace cur = m;
  while (cur.dim() > 0) {
    // next = span of products (basis of cur) x (basis of m)
    std::vector<VecZ> prods;
    for (Eigen::Index r = 0; r < cur.dim(); ++r)
      for (Eigen::Index s = 0; s < m.dim(); ++s)
        prods.push_back(a.multiply(cur.basis().row(r).transpose(), m.basis().row(s).transpose()));
    Subspace next = span_of_vectors(prods, n, q);
    out.dims.push_back(static_cast<int>(cur.dim() - next.dim()));
    out.powers.push_back(cur);
    if (next.dim() >= cur.dim()) throw std::logic_error("filtration: powers of m do not descend");
    cur = next;
  }
  out.powers.push_back(cur);  // the zero subspace
  int total = 0;
  for (int d : out.dims) total += d;
  if (total != n) throw std::logic_error("filtration: dimensions do not sum to n");
  return out;
}

VecZ SymBilinearMap::apply(const VecZ& u, const VecZ& v) const {
  VecZ out = zvec(dim_w, q);
  for (int i = 0; i < dim_v; ++i) {
    if (u(i).is_zero()) continue;
    for (int j = 0; j < dim_v; ++j) {
      if (v(j).is_zero()) continue;
      out += (u(i) * v(j)) * value(i, j);
    }
  }
  return out;
}

Subspace SymBilinearMap::span_on(const Subspace& u) const {
  std::vector<VecZ> vals;
  for (Eigen::Index r = 0; r < u.dim(); ++r)
    for (Eigen::Index s = r; s < u.dim(); ++s)
      vals.push_back(apply(u.basis().row(r).transpose(), u.basis().row(s).transpose()));
  return span_of_vectors(vals, dim_w, q);
}

SymBilinearMap SymBilinearMap::restrict_to(const Subspace& u) const {
  SymBilinearMap out(static_cast<int>(u.dim()), dim_w, q);
  for (Eigen::Index r = 0; r < u.dim(); ++r)
    for (Eigen::Index s = r; s < u.dim(); ++s)
      out.set_value(static_cast<int>(r), static_cast<int>(s),
                    apply(u.basis().row(r).transpose(), u.basis().row(s).transpose()));
  return out;
}

Subspace min_generating_subspace(const SymBilinearMap& f, std::int64_t budget) {
  Subspace target = f.image();
  for (Eigen::Index d = 0; d <= f.dim_v; ++d) {
    for (const Subspace& u : subspaces_of_dim(f.dim_v, d, f.q, budget)) {
      if (f.span_on(u) == target) {
        if (u.dim() > target.dim() + 1)
          throw std::logic_error("min_generating_subspace: dimension bound m <= n+1 violated");
        return u;
      }
    }
  }
  throw std::logic_error("min_generating_subspace: no subspace generates (V,V)");
}

bool good_basis_chain_holds(const SymBilinearMap& f, const MatZ& basis) {
  for (Eigen::Index i = 1; i < basis.rows(); ++i) {
    Subspace vi = Subspace::from_span(basis.topRows(i));
    Subspace wi = f.span_on(vi);
    VecZ val = f.apply(basis.row(i - 1).transpose(), basis.row(i).transpose());
    if (wi.contains(val)) return false;
  }
  return true;
}

namespace {

bool good_basis_dfs(const SymBilinearMap& f, const std::vector<VecZ>& candidates, MatZ& rows, int placed) {
  const int m = f.dim_v;
  if (placed == m) return true;
  for (const VecZ& cand : candidates) {
    // independence
    MatZ trial = zeros(placed + 1, m, f.q);
    for (int r = 0; r < placed; ++r) trial.row(r) = rows.row(r);
    trial.row(placed) = cand.transpose();
    if (rank_of(trial) != placed + 1) continue;
    if (placed >= 1) {
      Subspace vi = Subspace::from_span(MatZ(rows.topRows(placed)));
      VecZ val = f.apply(rows.row(placed - 1).transpose(), cand);
      if (f.span_on(vi).contains(val)) continue;
    }
    rows.row(placed) = cand.transpose();
    if (good_basis_dfs(f, candidates, rows, placed + 1)) return true;
  }
  return false;
}

}  // namespace

std::optional<MatZ> good_basis(const SymBilinearMap& f) {
  const int m = f.dim_v;
  MatZ rows = zeros(m, m, f.q);
  if (m == 0) return rows;
  // Projective representatives: first nonzero coordinate 1, in vector order.
  std::vector<VecZ> candidates;
  VectorStream vs(m, f.q);
  while (auto v = vs.next()) {
    Eigen::Index lead = 0;
    while (lead < m && (*v)(lead).is_zero()) ++lead;
    if (lead < m && (*v)(lead) == Zmod(1, f.q)) candidates.push_back(*v);
  }
  if (!good_basis_dfs(f, candidates, rows, 0)) return std::nullopt;
  if (!good_basis_chain_holds(f, rows)) throw std::logic_error("good_basis: chain condition re-check failed");
  return rows;
}

// ---------------------------------------------------------------------------
// Canonical data
// ---------------------------------------------------------------------------

namespace {

// Coordinates in m^i/m^(i+1) with respect to chosen representatives: solve
// x = reps * lambda  (mod lower), returning lambda.
struct QuotientCoords {
  MatZ system;  // n x (#reps + dim lower): columns are reps then lower basis
  int nreps = 0;

  QuotientCoords() = default;
  QuotientCoords(const std::vector<VecZ>& reps, const Subspace& lower, int n, std::int64_t q) {
    nreps = static_cast<int>(reps.size());
    system = zeros(n, nreps + lower.dim(), q);
    for (int k = 0; k < nreps; ++k) system.col(k) = reps[k];
    for (Eigen::Index j = 0; j < lower.dim(); ++j) system.col(nreps + j) = lower.basis().row(j).transpose();
  }
  VecZ coords(const VecZ& x) const {
    auto sol = solve_affine(system, x);
    if (!sol.feasible()) throw std::logic_error("quotient coordinates: element outside the filtration step");
    VecZ out = zvec(nreps, x(0).modulus());
    for (int k = 0; k < nreps; ++k) out(k) = (*sol.solution)(k);
    return out;
  }
};

// Representatives of a basis of upper/lower: rows of upper's echelon basis
// that extend lower, in order.
std::vector<VecZ> quotient_reps(const Subspace& upper, const Subspace& lower) {
  std::vector<VecZ> reps;
  Subspace span = lower;
  for (Eigen::Index r = 0; r < upper.dim(); ++r) {
    VecZ v = upper.basis().row(r).transpose();
    if (span.contains(v)) continue;
    span = span.sum(Subspace::from_span(single_row(v)));
    reps.push_back(v);
  }
  return reps;
}

}  // namespace

Extraction extract_canonical(const BasedAlgebra& a, std::int64_t budget) {
  if (!is_local_prime_residue(a))
    throw std::invalid_argument("extract_canonical: algebra is not local with residue field F_p");
  const int n = a.rank();
  const std::int64_t q = a.modulus();
  Filtration filt = filtration(a);
  const int t = static_cast<int>(filt.dims.size()) - 1;  // m^t != 0, m^(t+1) = 0
  const std::vector<int>& m_seq = filt.dims;
  // powers[i] = m^(i+1); define pw(i) = m^i for i in [1, t+1].
  auto pw = [&](int i) -> const Subspace& { return filt.powers[i - 1]; };

  const int m1 = t >= 1 ? m_seq[1] : 0;
  const int m2 = t >= 2 ? m_seq[2] : 0;

  std::vector<VecZ> v_reps, w_reps;
  QuotientCoords v_coords, w_coords;
  if (t >= 1) {
    v_reps = quotient_reps(pw(1), pw(2));
    v_coords = QuotientCoords(v_reps, pw(2), n, q);
  }
  if (t >= 2) {
    w_reps = quotient_reps(pw(2), pw(3));
    w_coords = QuotientCoords(w_reps, pw(3), n, q);
  }

  // The induced symmetric bilinear map m/m^2 x m/m^2 -> m^2/m^3.
  SymBilinearMap f(m1, m2, q);
  for (int i = 0; i < m1; ++i)
    for (int j = i; j < m1; ++j) {
      VecZ prod = a.multiply(v_reps[i], v_reps[j]);
      f.set_value(i, j, m2 > 0 ? w_coords.coords(prod) : zvec(0, q));
    }

  Subspace vbar = min_generating_subspace(f, budget);
  const int s = static_cast<int>(vbar.dim());
  if (s > m2 + 1) throw std::logic_error("extract_canonical: s <= m_2 + 1 violated");

  auto gb = good_basis(f.restrict_to(vbar));
  if (!gb) throw std::logic_error("extract_canonical: good basis not found on a minimal subspace");
  // x_i in V-coordinates, i = 1..s.
  std::vector<VecZ> x(s, zvec(m1, q));
  for (int i = 0; i < s; ++i) {
    VecZ xi = zvec(m1, q);
    for (Eigen::Index k = 0; k < vbar.dim(); ++k) xi += (*gb)(i, k) * VecZ(vbar.basis().row(k).transpose());
    x[i] = xi;
  }

  // Stage structure of W: y_j = (x_b, x_i) entering at stage i, least valid b.
  std::vector<int> w_dims = {0};
  std::vector<std::pair<int, int>> y_src;  // (b, i), 1-based
  Subspace wspan(m2, q);
  for (int i = 1; i <= s; ++i) {
    for (int b = 1; b <= i; ++b) {
      VecZ val = f.apply(x[b - 1], x[i - 1]);
      if (wspan.contains(val)) continue;
      wspan = wspan.sum(Subspace::from_span(single_row(val)));
      y_src.emplace_back(b, i);
    }
    w_dims.push_back(static_cast<int>(wspan.dim()));
    if (i >= 2 && w_dims[i] <= w_dims[i - 1])
      throw std::logic_error("extract_canonical: w-dimension chain not strictly increasing");
  }
  if (w_dims.back() != m2) throw std::logic_error("extract_canonical: (Vbar, Vbar) does not span W");

  // Extend x_1..x_s to a basis of V.
  {
    Subspace xspan = span_of_vectors(x, m1, q);
    for (int k = 0; k < m1 && static_cast<int>(x.size()) < m1; ++k) {
      VecZ e = zvec(m1, q);
      e(k) = Zmod(1, q);
      if (xspan.contains(e)) continue;
      xspan = xspan.sum(Subspace::from_span(single_row(e)));
      x.push_back(e);
    }
    if (static_cast<int>(x.size()) != m1) throw std::logic_error("extract_canonical: basis extension failed");
  }

  // Lifts g_{1i} and the level-2 representatives g_{2j} = g_{1b} g_{1i}.
  std::vector<std::vector<VecZ>> g(t + 1);
  g[0].push_back(a.one());
  if (t >= 1)
    for (int i = 0; i < m1; ++i) {
      VecZ lift = zvec(n, q);
      for (int k = 0; k < m1; ++k) lift += x[i](k) * v_reps[k];
      g[1].push_back(lift);
    }
  if (t >= 2)
    for (auto [b, i] : y_src) g[2].push_back(a.multiply(g[1][b - 1], g[1][i - 1]));

  // Levels >= 3: g_{ i j } = g_{i-1, r} g_{1 l}, staged by l; r > w_{l-1} at
  // stage l is asserted for i = 3.
  std::vector<std::vector<std::pair<int, int>>> src(t + 1);  // level i -> (r, l), 1-based
  for (int lev = 3; lev <= t; ++lev) {
    Subspace span = pw(lev + 1);
    Subspace x_stage = pw(lev + 1);  // X_l + m^(l+1), for the i=3 staging check
    for (int l = 1; l <= s; ++l) {
      for (int r = 1; r <= m_seq[lev - 1]; ++r) {
        VecZ cand = a.multiply(g[lev - 1][r - 1], g[1][l - 1]);
        if (span.contains(cand)) continue;
        if (lev == 3 && r <= w_dims[l - 1])
          throw std::logic_error("extract_canonical: staged pick with r <= w_{l-1} at level 3");
        span = span.sum(Subspace::from_span(single_row(cand)));
        g[lev].push_back(cand);
        src[lev].emplace_back(r, l);
      }
      if (lev == 3) {
        // picked span through stage l must equal X_l = image of m^2/m^3 (x) V_l.
        std::vector<VecZ> prods;
        for (int r = 1; r <= m2; ++r)
          for (int c = 1; c <= l; ++c) prods.push_back(a.multiply(g[2][r - 1], g[1][c - 1]));
        Subspace xl = pw(4);
        for (const VecZ& p : prods) xl = xl.sum(Subspace::from_span(single_row(p)));
        if (!(span == xl)) throw std::logic_error("extract_canonical: level-3 staging does not span X_l");
      }
    }
    if (static_cast<int>(g[lev].size()) != m_seq[lev])
      throw std::logic_error("extract_canonical: surjectivity of m^(i-1)/m^i (x) Vbar -> m^i/m^(i+1) failed");
  }

  // Assemble the adapted basis and expansion map.
  MatZ basis = zeros(n, n, q);
  std::vector<std::pair<int, int>> labels;  // flat -> (u, v), 1-based v
  {
    int colidx = 0;
    for (int lev = 0; lev <= t; ++lev)
      for (std::size_t v = 0; v < g[lev].size(); ++v) {
        basis.col(colidx) = g[lev][v];
        labels.emplace_back(lev, static_cast<int>(v) + 1);
        ++colidx;
      }
    if (colidx != n) throw std::logic_error("extract_canonical: adapted basis has wrong size");
  }
  MatZ binv = inverse(basis);

  CanonicalData data;
  data.m_seq = m_seq;
  data.s = s;
  data.w_dims = w_dims;
  data.q = q;
  auto record = [&](int i, int j, int l, const VecZ& prod, int min_u) {
    VecZ e = binv * prod;
    for (int k = 0; k < n; ++k) {
      if (e(k).is_zero()) continue;
      auto [u, v] = labels[k];
      if (u < min_u) throw std::logic_error("extract_canonical: product has support below the filtration level");
      data.constants[{i, j, l, u, v}] = e(k).value();
    }
  };
  for (int j = 1; j <= m1; ++j)
    for (int l = j; l <= m1; ++l) record(1, j, l, a.multiply(g[1][j - 1], g[1][l - 1]), 2);
  for (int l = 1; l <= s; ++l)
    for (int j = w_dims[l - 1] + 1; j <= m2; ++j)
      record(2, j, l, a.multiply(g[2][j - 1], g[1][l - 1]), 3);
  for (int lev = 3; lev <= t; ++lev)
    for (int j = 1; j <= m_seq[lev]; ++j)
      for (int l = 1; l <= s; ++l) record(lev, j, l, a.multiply(g[lev][j - 1], g[1][l - 1]), lev + 1);

  return {data, basis};
}

// ---------------------------------------------------------------------------
// Reconstruction
// ---------------------------------------------------------------------------

namespace {

struct Rebuilder {
  const CanonicalData& d;
  int n = 0, t = 0, m1 = 0, m2 = 0;
  std::vector<int> offset;                  // level -> first flat index
  std::vector<std::pair<int, int>> labels;  // flat -> (u, v)
  std::vector<MatZ> mul;                    // l (1-based) -> operator "multiply by g_{1l}"
  std::vector<char> mul_col_set;            // n * m1 flags

  explicit Rebuilder(const CanonicalData& data) : d(data) {
    t = static_cast<int>(d.m_seq.size()) - 1;
    if (t < 0 || d.m_seq[0] != 1) throw std::invalid_argument("reconstruct: m_seq must start with 1");
    for (int i = 1; i <= t; ++i)
      if (d.m_seq[i] <= 0) throw std::invalid_argument("reconstruct: filtration dimensions must be positive");
    offset.assign(t + 2, 0);
    for (int i = 0; i <= t; ++i) {
      offset[i + 1] = offset[i] + d.m_seq[i];
      for (int v = 1; v <= d.m_seq[i]; ++v) labels.emplace_back(i, v);
    }
    n = offset[t + 1];
    m1 = t >= 1 ? d.m_seq[1] : 0;
    m2 = t >= 2 ? d.m_seq[2] : 0;
    if (d.s > m2 + 1) throw std::invalid_argument("reconstruct: s must satisfy s <= m_2 + 1");
    if (static_cast<int>(d.w_dims.size()) != d.s + 1 || d.w_dims.front() != 0)
      throw std::invalid_argument("reconstruct: w_dims must be (w_0=0, ..., w_s)");
    for (int i = 1; i <= d.s; ++i)
      if (d.w_dims[i] < d.w_dims[i - 1] || (i >= 2 && d.w_dims[i] == d.w_dims[i - 1]))
        throw std::invalid_argument("reconstruct: w_dims must satisfy w_0 <= w_1 < ... < w_s");
    if (d.s > 0 && d.w_dims.back() != m2)
      throw std::invalid_argument("reconstruct: w_s must equal m_2");
    if (d.s == 0 && m2 != 0) throw std::invalid_argument("reconstruct: s = 0 requires m_2 = 0");
    validate_keys();
    mul.assign(m1 + 1, zeros(n, n, d.q));
    mul_col_set.assign(static_cast<std::size_t>(n) * (m1 + 1), 0);
  }

  int flat(int u, int v) const { return offset[u] + v - 1; }

  void validate_keys() const {
    for (const auto& [key, value] : d.constants) {
      auto [i, j, l, u, v] = key;
      if (value < 0 || value >= d.q) throw std::invalid_argument("reconstruct: constant value not reduced");
      bool ok = u >= 0 && u <= t && v >= 1 && v <= d.m_seq[u];
      if (i == 1)
        ok = ok && 1 <= j && j <= l && l <= m1 && u >= 2;
      else if (i == 2)
        ok = ok && 1 <= l && l <= d.s && d.w_dims[l - 1] < j && j <= m2 && u >= 3;
      else if (i >= 3)
        ok = ok && i <= t && 1 <= j && j <= d.m_seq[i] && 1 <= l && l <= d.s && u > i;
      else
        ok = false;
      if (!ok)
        throw std::invalid_argument("reconstruct: constant index (" + std::to_string(i) + "," + std::to_string(j) +
                                    "," + std::to_string(l) + "," + std::to_string(u) + "," + std::to_string(v) +
                                    ") outside the allowed blocks");
    }
  }

  // Expansion of a recorded product g_{ij} g_{1l} from the sparse constants.
  VecZ expansion(int i, int j, int l) const {
    VecZ out = zvec(n, d.q);
    auto lo = d.constants.lower_bound({i, j, l, 0, 0});
    for (auto it = lo; it != d.constants.end(); ++it) {
      auto [ii, jj, ll, u, v] = it->first;
      if (ii != i || jj != j || ll != l) break;
      out(flat(u, v)) = Zmod(it->second, d.q);
    }
    return out;
  }
  VecZ row1(int j, int l) const { return expansion(1, std::min(j, l), std::max(j, l)); }

  bool is_indicator(const VecZ& e, int u, int v) const {
    int fi = flat(u, v);
    for (int k = 0; k < n; ++k) {
      Zmod want = Zmod(k == fi ? 1 : 0, d.q);
      if (e(k) != want) return false;
    }
    return true;
  }

  // Find (b <= c) within the recorded blocks whose product is exactly g_{uv}.
  // For level 2 targets the factors both lie in [1, s]; for level >= 3 targets
  // the decomposition is g_{u-1, r} g_{1 b} with b <= s.
  std::pair<int, int> decompose(int u, int v, int max_factor) const {
    if (u == 2) {
      for (int b = 1; b <= max_factor; ++b)
        for (int c = b; c <= max_factor; ++c)
          if (is_indicator(row1(b, c), u, v)) return {c, b};  // g_{1c} * g_{1b}; either order works
    } else {
      for (int b = 1; b <= d.s; ++b) {
        if (u - 1 == 2) {
          for (int r = d.w_dims[b - 1] + 1; r <= m2; ++r)
            if (is_indicator(expansion(2, r, b), u, v)) return {r, b};
        } else {
          for (int r = 1; r <= d.m_seq[u - 1]; ++r)
            if (is_indicator(expansion(u - 1, r, b), u, v)) return {r, b};
        }
      }
    }
    throw std::invalid_argument("reconstruct: no recorded product realizes basis vector (" + std::to_string(u) +
                                "," + std::to_string(v) + "); missing or conflicting constants");
  }

  Zmod& mul_at(int l, int row, int col) { return mul[l](row, col); }
  void set_col(int l, int col, const VecZ& value) {
    mul[l].col(col) = value;
    mul_col_set[static_cast<std::size_t>(l) * n + col] = 1;
  }
  bool col_ready(int l, int col) const { return mul_col_set[static_cast<std::size_t>(l) * n + col] != 0; }
  VecZ apply_mul(int l, const VecZ& x) const {
    VecZ out = zvec(n, d.q);
    for (int k = 0; k < n; ++k) {
      if (x(k).is_zero()) continue;
      if (!col_ready(l, k)) throw std::logic_error("reconstruct: operator column used before it was determined");
      out += x(k) * VecZ(mul[l].col(k));
    }
    return out;
  }

  void build_operators() {
    // Stage A: multiplication by g_{1l} for l <= s (then the rest).
    for (int l = 1; l <= m1; ++l) {
      VecZ unit_col = zvec(n, d.q);
      if (l <= m1) unit_col(flat(1, l)) = Zmod(1, d.q);
      set_col(l, flat(0, 1), unit_col);
      for (int j = 1; j <= m1; ++j) set_col(l, flat(1, j), row1(j, l));
    }
    for (int l = 1; l <= d.s; ++l)
      for (int lev = 3; lev <= t; ++lev)
        for (int j = 1; j <= d.m_seq[lev]; ++j) set_col(l, flat(lev, j), expansion(lev, j, l));
    // Level-2 columns for l <= s, by strong induction on l.
    for (int l = 1; l <= d.s; ++l)
      for (int j = 1; j <= m2; ++j) {
        if (j > d.w_dims[l - 1]) {
          set_col(l, flat(2, j), expansion(2, j, l));
          continue;
        }
        auto [c, b] = decompose(2, j, l - 1);  // g_{2j} = g_{1b} g_{1c}, b <= c <= l-1
        VecZ z = row1(b, l);                   // g_{1b} g_{1l}, support at levels >= 2
        VecZ out = zvec(n, d.q);
        for (int k = 0; k < n; ++k) {
          if (z(k).is_zero()) continue;
          auto [u, v] = labels[k];
          if (u < 2) throw std::invalid_argument("reconstruct: level-1 product with support below m^2");
          out += z(k) * apply_mul_basis(c, u, v);
        }
        set_col(l, flat(2, j), out);
      }
    // Stage B: l > s, by induction on the level.
    for (int l = d.s + 1; l <= m1; ++l)
      for (int lev = 2; lev <= t; ++lev)
        for (int j = 1; j <= d.m_seq[lev]; ++j) {
          auto [r, b] = decompose(lev, j, d.s);  // g_{lev j} = g_{lev-1, r} g_{1b}, b <= s
          VecZ z = apply_mul(l, basis_vec(lev - 1, r));
          VecZ out = zvec(n, d.q);
          for (int k = 0; k < n; ++k) {
            if (z(k).is_zero()) continue;
            auto [u, v] = labels[k];
            out += z(k) * apply_mul_basis(b, u, v);
          }
          set_col(l, flat(lev, j), out);
        }
  }

  VecZ basis_vec(int u, int v) const {
    VecZ e = zvec(n, d.q);
    e(flat(u, v)) = Zmod(1, d.q);
    return e;
  }
  VecZ apply_mul_basis(int l, int u, int v) const {
    if (!col_ready(l, flat(u, v)))
      throw std::logic_error("reconstruct: operator column (level " + std::to_string(u) + ") not yet determined");
    return mul[l].col(flat(u, v));
  }

  StructureTable build_table() {
    build_operators();
    // Products g_x g_y by induction on the level of y.
    std::vector<std::vector<VecZ>> prod(n, std::vector<VecZ>(n, zvec(n, d.q)));
    for (int xk = 0; xk < n; ++xk) prod[xk][flat(0, 1)] = basis_vec(labels[xk].first, labels[xk].second);
    for (int l = 1; l <= m1; ++l)
      for (int xk = 0; xk < n; ++xk) prod[xk][flat(1, l)] = mul[l].col(xk);
    for (int lev = 2; lev <= t; ++lev)
      for (int j = 1; j <= d.m_seq[lev]; ++j) {
        auto [r, b] = decompose(lev, j, d.s);
        for (int xk = 0; xk < n; ++xk) {
          VecZ z = mul[b].col(xk);  // g_x g_{1b}
          VecZ out = zvec(n, d.q);
          for (int k = 0; k < n; ++k)
            if (!z(k).is_zero()) out += z(k) * prod[k][flat(lev - 1, r)];
          prod[xk][flat(lev, j)] = out;
        }
      }
    StructureTable tt(n, d.q);
    for (int xk = 0; xk < n; ++xk)
      for (int yk = 0; yk < n; ++yk) tt.set_row(xk, yk, prod[xk][yk]);
    tt.d(0) = Zmod(1, d.q);
    return tt;
  }
};

}  // namespace

BasedAlgebra reconstruct(const CanonicalData& data) {
  Rebuilder rb(data);
  StructureTable t = rb.build_table();
  std::vector<Violation> viol;
  auto alg = BasedAlgebra::validate(t, &viol);
  if (!alg)
    throw std::invalid_argument("reconstruct: data do not assemble to an algebra; first failure: " +
                                viol.front().describe());
  if (!is_local_prime_residue(*alg)) throw std::invalid_argument("reconstruct: result is not local");
  // The recorded products must be reproduced verbatim.
  for (const auto& [key, value] : data.constants) {
    auto [i, j, l, u, v] = key;
    VecZ p = alg->multiply(rb.basis_vec(i, j), rb.basis_vec(1, l));
    if (p(rb.flat(u, v)) != Zmod(value, data.q))
      throw std::logic_error("reconstruct: recorded constant not reproduced");
  }
  return *alg;
}

std::string CanonicalData::to_json() const {
  nlohmann::json j;
  j["m_seq"] = m_seq;
  j["s"] = s;
  j["w_dims"] = w_dims;
  auto arr = nlohmann::json::array();
  for (const auto& [key, value] : constants) {
    auto [i, jj, l, u, v] = key;
    arr.push_back({i, jj, l, u, v, value});
  }
  j["constants"] = arr;
  j["q"] = q;
  return j.dump();
}

CanonicalData CanonicalData::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CanonicalData d;
  d.m_seq = j.at("m_seq").get<std::vector<int>>();
  d.s = j.at("s").get<int>();
  d.w_dims = j.at("w_dims").get<std::vector<int>>();
  d.q = j.at("q").get<std::int64_t>();
  for (const auto& row : j.at("constants")) {
    if (row.size() != 6) throw std::invalid_argument("CanonicalData: constants rows must have 6 entries");
    d.constants[{row[0].get<int>(), row[1].get<int>(), row[2].get<int>(), row[3].get<int>(), row[4].get<int>()}] =
        row[5].get<std::int64_t>();
  }
  return d;
}

}  // namespace algmod

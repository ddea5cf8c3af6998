#include <algmod/algebra.hpp>

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace algmod {

std::string StructureTable::key() const {
  std::string s;
  s.reserve(c.size() + d.size() + 16);
  s += std::to_string(n) + "/" + std::to_string(modulus) + ":";
  for (const Zmod& x : c) s += static_cast<char>('0' + x.value());
  s += '|';
  for (Eigen::Index i = 0; i < d.size(); ++i) s += static_cast<char>('0' + d(i).value());
  return s;
}

std::string Violation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::commutativity:
      os << "commutativity at (i,j,l)=(" << idx[0] + 1 << "," << idx[1] + 1 << "," << idx[2] + 1 << ")";
      break;
    case Kind::associativity:
      os << "associativity at (i,j,k,l)=(" << idx[0] + 1 << "," << idx[1] + 1 << "," << idx[2] + 1 << ","
         << idx[3] + 1 << ")";
      break;
    case Kind::unit:
      os << "unit at (j,l)=(" << idx[0] + 1 << "," << idx[1] + 1 << ")";
      break;
  }
  return os.str();
}

std::vector<Violation> table_violations(const StructureTable& t) {
  std::vector<Violation> out;
  const int n = t.n;
  const std::int64_t q = t.modulus;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int l = 0; l < n; ++l)
        if (t.at(i, j, l) != t.at(j, i, l))
          out.push_back({Violation::Kind::commutativity, {i, j, l, -1}});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Zmod s(0, q);
          for (int m = 0; m < n; ++m)
            s += t.at(i, j, m) * t.at(m, k, l) - t.at(j, k, m) * t.at(i, m, l);
          if (!s.is_zero()) out.push_back({Violation::Kind::associativity, {i, j, k, l}});
        }
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      Zmod s(0, q);
      for (int i = 0; i < n; ++i) s += t.d(i) * t.at(i, j, l);
      if (s != Zmod(j == l ? 1 : 0, q)) out.push_back({Violation::Kind::unit, {j, l, -1, -1}});
    }
  return out;
}

BasedAlgebra::BasedAlgebra(const StructureTable& t) : table_(t), trace_vec_(zvec(t.n, t.modulus)) {
  const int n = t.n;
  mult_ops_.reserve(n);
  for (int i = 0; i < n; ++i) {
    MatZ m = zeros(n, n, t.modulus);
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) m(l, j) = t.at(i, j, l);
    mult_ops_.push_back(std::move(m));
  }
  for (int m = 0; m < n; ++m) {
    Zmod tr(0, t.modulus);
    for (int l = 0; l < n; ++l) tr += t.at(m, l, l);
    trace_vec_(m) = tr;
  }
  normalized_ = n >= 1 && table_.d(0) == Zmod(1, t.modulus);
  for (int i = 1; normalized_ && i < n; ++i) normalized_ = table_.d(i).is_zero();
  for (int j = 0; normalized_ && j < n; ++j)
    for (int l = 0; l < n; ++l)
      if (table_.at(0, j, l) != Zmod(j == l ? 1 : 0, t.modulus)) {
        normalized_ = false;
        break;
      }
}

std::optional<BasedAlgebra> BasedAlgebra::validate(const StructureTable& t, std::vector<Violation>* out) {
  if (static_cast<std::size_t>(t.n) * t.n * t.n != t.c.size() || t.d.size() != t.n)
    throw std::invalid_argument("validate: table shape inconsistent with n");
  auto v = table_violations(t);
  if (out) *out = v;
  if (!v.empty()) return std::nullopt;
  return BasedAlgebra(t);
}

BasedAlgebra BasedAlgebra::require(const StructureTable& t, const char* what) {
  std::vector<Violation> v;
  auto a = validate(t, &v);
  if (!a) throw std::logic_error(std::string(what) + " is not a valid algebra: " + v.front().describe());
  return *a;
}

VecZ BasedAlgebra::multiply(const VecZ& u, const VecZ& v) const {
  if (u.size() != rank() || v.size() != rank()) throw std::invalid_argument("multiply: length mismatch");
  VecZ out = zvec(rank(), modulus());
  for (int i = 0; i < rank(); ++i) {
    if (u(i).is_zero()) continue;
    out += u(i) * (mult_ops_[i] * v);
  }
  return out;
}

MatZ BasedAlgebra::mult_operator(const VecZ& u) const {
  MatZ op = zeros(rank(), rank(), modulus());
  for (int i = 0; i < rank(); ++i)
    if (!u(i).is_zero()) op += u(i) * mult_ops_[i];
  return op;
}

VecZ BasedAlgebra::power(const VecZ& u, int e) const {
  VecZ acc = one();
  for (int i = 0; i < e; ++i) acc = multiply(acc, u);
  return acc;
}

Zmod discriminant(const BasedAlgebra& a) {
  const int n = a.rank();
  MatZ gram = zeros(n, n, a.modulus());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Zmod s(0, a.modulus());
      for (int m = 0; m < n; ++m) s += a.table().at(i, j, m) * a.trace_vec()(m);
      gram(i, j) = s;
    }
  return det(gram);
}

bool is_etale(const BasedAlgebra& a) { return !discriminant(a).is_zero(); }

BasedAlgebra make_split(int n, std::int64_t q) {
  StructureTable t(n, q);
  for (int i = 0; i < n; ++i) {
    t.at(i, i, i) = Zmod(1, q);
    t.d(i) = Zmod(1, q);
  }
  return BasedAlgebra::require(t, "split");
}

BasedAlgebra make_bullet(int n, std::int64_t q) {
  if (n < 1) throw std::invalid_argument("make_bullet: n must be >= 1");
  StructureTable t(n, q);
  t.d(0) = Zmod(1, q);
  for (int j = 0; j < n; ++j) {
    t.at(0, j, j) = Zmod(1, q);
    t.at(j, 0, j) = Zmod(1, q);
  }
  t.at(0, 0, 0) = Zmod(1, q);
  return BasedAlgebra::require(t, "bullet");
}

BasedAlgebra make_power_quotient(int n, std::int64_t q) {
  if (n < 1) throw std::invalid_argument("make_power_quotient: n must be >= 1");
  StructureTable t(n, q);
  t.d(0) = Zmod(1, q);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j < n) t.at(i, j, i + j) = Zmod(1, q);
  return BasedAlgebra::require(t, "k[x]/x^n");
}

BasedAlgebra product(const BasedAlgebra& a, const BasedAlgebra& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("product: modulus mismatch");
  const int na = a.rank(), nb = b.rank(), n = na + nb;
  StructureTable t(n, a.modulus());
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int l = 0; l < na; ++l) t.at(i, j, l) = a.table().at(i, j, l);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      for (int l = 0; l < nb; ++l) t.at(na + i, na + j, na + l) = b.table().at(i, j, l);
  for (int i = 0; i < na; ++i) t.d(i) = a.one()(i);
  for (int i = 0; i < nb; ++i) t.d(na + i) = b.one()(i);
  return BasedAlgebra::require(t, "product");
}

namespace {

// Index of x_a x_b (a <= b) in the degree-2 monomial coordinate order.
Eigen::Index mono_index(int d, int a, int b) {
  if (a > b) std::swap(a, b);
  Eigen::Index idx = 0;
  for (int i = 0; i < a; ++i) idx += d - i;
  return idx + (b - a);
}

}  // namespace

BasedAlgebra make_truncated_local(int d, const Subspace& relation_span, std::int64_t q) {
  const Eigen::Index monos = degree2_monomials(d);
  if (relation_span.ambient() != monos || relation_span.modulus() != q)
    throw std::invalid_argument("make_truncated_local: relation span must live in the degree-2 monomial space");
  // Lexicographically least monomials whose classes complete the relation span.
  std::vector<Eigen::Index> picked;
  Subspace span = relation_span;
  for (Eigen::Index mi = 0; mi < monos; ++mi) {
    VecZ e = zvec(monos, q);
    e(mi) = Zmod(1, q);
    if (span.contains(e)) continue;
    MatZ rowv = zeros(1, monos, q);
    rowv.row(0) = e.transpose();
    span = span.sum(Subspace::from_span(rowv));
    picked.push_back(mi);
  }
  const int r = static_cast<int>(picked.size());
  const int n = 1 + d + r;
  // Coordinates of each monomial class in the picked basis: solve
  // e_m = sum lambda_k picked_k  (mod relation_span).
  MatZ sys = zeros(monos + relation_span.dim(), r, q);
  // Columns: picked monomials; we solve picked * lambda + relation = e_m.
  MatZ lhs = zeros(monos, r + relation_span.dim(), q);
  for (int k = 0; k < r; ++k) lhs(picked[k], k) = Zmod(1, q);
  for (Eigen::Index j = 0; j < relation_span.dim(); ++j)
    lhs.col(r + j) = relation_span.basis().row(j).transpose();
  auto mono_class = [&](int a, int b) {
    VecZ e = zvec(monos, q);
    e(mono_index(d, a, b)) = Zmod(1, q);
    auto sol = solve_affine(lhs, e);
    if (!sol.feasible()) throw std::logic_error("make_truncated_local: monomial class outside span");
    VecZ lam = zvec(r, q);
    for (int k = 0; k < r; ++k) lam(k) = (*sol.solution)(k);
    return lam;
  };
  StructureTable t(n, q);
  t.d(0) = Zmod(1, q);
  for (int j = 0; j < n; ++j) {
    t.at(0, j, j) = Zmod(1, q);
    if (j) t.at(j, 0, j) = Zmod(1, q);
  }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      VecZ lam = mono_class(a, b);
      for (int k = 0; k < r; ++k) t.at(1 + a, 1 + b, 1 + d + k) = lam(k);
    }
  // All products with m^2 vanish (m^3 = 0), and m^2 * m^2 = 0: rows already zero.
  return BasedAlgebra::require(t, "truncated local");
}

BasedAlgebra make_cubic(Zmod a, Zmod b, Zmod c, Zmod d, std::int64_t q) {
  StructureTable t(3, q);
  t.d(0) = Zmod(1, q);
  for (int j = 0; j < 3; ++j) {
    t.at(0, j, j) = Zmod(1, q);
    if (j) t.at(j, 0, j) = Zmod(1, q);
  }
  auto set_sym = [&](int i, int j, Zmod e0, Zmod e1, Zmod e2) {
    t.at(i, j, 0) = e0;
    t.at(i, j, 1) = e1;
    t.at(i, j, 2) = e2;
    t.at(j, i, 0) = e0;
    t.at(j, i, 1) = e1;
    t.at(j, i, 2) = e2;
  };
  set_sym(1, 1, -(a * c), b, -a);
  set_sym(2, 2, -(b * d), d, -c);
  set_sym(1, 2, -(a * d), Zmod(0, q), Zmod(0, q));
  return BasedAlgebra::require(t, "cubic");
}

bool generates(const BasedAlgebra& a, const std::vector<VecZ>& gens) {
  const int n = a.rank();
  const std::int64_t q = a.modulus();
  if (n == 0) return true;
  MatZ start = zeros(1, n, q);
  start.row(0) = a.one().transpose();
  Subspace span = Subspace::from_span(start);
  // After k rounds, span holds all monomials in the generators of degree <= k.
  for (int deg = 1; deg < n && span.dim() < n; ++deg) {
    Subspace next = span;
    for (const VecZ& g : gens)
      for (Eigen::Index r = 0; r < span.dim(); ++r) {
        VecZ prod = a.multiply(VecZ(span.basis().row(r).transpose()), g);
        MatZ rowv = zeros(1, n, q);
        rowv.row(0) = prod.transpose();
        next = next.sum(Subspace::from_span(rowv));
      }
    span = next;
  }
  return span.dim() == n;
}

StructureTable scale_weighted(const BasedAlgebra& a, Zmod t) {
  if (!a.normalized()) throw std::invalid_argument("scale_weighted: table must be in B_n^1 form");
  StructureTable out = a.table();
  Zmod t2 = t * t;
  for (int i = 1; i < out.n; ++i)
    for (int j = 1; j < out.n; ++j)
      for (int l = 0; l < out.n; ++l) out.at(i, j, l) *= (l == 0 ? t2 : t);
  return out;
}

Normalized normalize(const BasedAlgebra& a) {
  const int n = a.rank();
  const std::int64_t q = a.modulus();
  require_prime(q, "normalize");
  if (n == 0) return {a, zeros(0, 0, q)};
  int pivot = -1;
  for (int i = 0; i < n; ++i)
    if (!a.one()(i).is_zero()) {
      pivot = i;
      break;
    }
  if (pivot < 0) throw std::logic_error("normalize: identity has no unit coordinate");
  // New basis: 1, then the old basis vectors in order, skipping e_pivot.
  MatZ minv = zeros(n, n, q);
  minv.col(0) = a.one();
  int col = 1;
  for (int i = 0; i < n; ++i) {
    if (i == pivot) continue;
    minv(i, col) = Zmod(1, q);
    ++col;
  }
  MatZ m = inverse(minv);
  // Transform the table by m (see action.hpp; inlined to avoid a cycle).
  StructureTable t(n, q);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      VecZ u = minv.col(i), v = minv.col(j);
      VecZ prod = m * a.multiply(u, v);
      t.set_row(i, j, prod);
    }
  VecZ d = m * a.one();
  for (int i = 0; i < n; ++i) t.d(i) = d(i);
  BasedAlgebra out = BasedAlgebra::require(t, "normalized table");
  if (!out.normalized()) throw std::logic_error("normalize: result not in B_n^1 form");
  return {out, m};
}

std::string table_to_json(const StructureTable& t) {
  nlohmann::json j;
  j["n"] = t.n;
  j["modulus"] = t.modulus;
  auto c = nlohmann::json::array();
  for (int i = 0; i < t.n; ++i) {
    auto ci = nlohmann::json::array();
    for (int jj = 0; jj < t.n; ++jj) {
      auto cij = nlohmann::json::array();
      for (int l = 0; l < t.n; ++l) cij.push_back(t.at(i, jj, l).value());
      ci.push_back(cij);
    }
    c.push_back(ci);
  }
  j["c"] = c;
  auto d = nlohmann::json::array();
  for (Eigen::Index i = 0; i < t.d.size(); ++i) d.push_back(t.d(i).value());
  j["d"] = d;
  return j.dump();
}

StructureTable table_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int n = j.at("n").get<int>();
  std::int64_t q = j.at("modulus").get<std::int64_t>();
  if (n < 0 || q < 2) throw std::invalid_argument("table_from_json: need n >= 0 and modulus >= 2");
  StructureTable t(n, q);
  auto residue = [&](const nlohmann::json& v) {
    std::int64_t x = v.get<std::int64_t>();
    if (x < 0 || x >= q) throw std::invalid_argument("table_from_json: unreduced residue " + std::to_string(x));
    return Zmod(x, q);
  };
  const auto& c = j.at("c");
  if (static_cast<int>(c.size()) != n) throw std::invalid_argument("table_from_json: bad c shape");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(c[i].size()) != n) throw std::invalid_argument("table_from_json: bad c shape");
    for (int jj = 0; jj < n; ++jj) {
      if (static_cast<int>(c[i][jj].size()) != n) throw std::invalid_argument("table_from_json: bad c shape");
      for (int l = 0; l < n; ++l) t.at(i, jj, l) = residue(c[i][jj][l]);
    }
  }
  const auto& d = j.at("d");
  if (static_cast<int>(d.size()) != n) throw std::invalid_argument("table_from_json: bad d shape");
  for (int i = 0; i < n; ++i) t.d(i) = residue(d[i]);
  return t;
}

}  // namespace algmod

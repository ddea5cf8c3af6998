// Structure-constant tables of based rank-n algebras, validation against the
// commutativity/associativity/unit equations, and the standard constructions.
#pragma once

#include <algmod/linalg.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace algmod {

/// Raw coefficient data of a candidate based algebra: the n^3 structure
/// constants c[i][j][l] of e_i e_j = sum_l c[i][j][l] e_l together with the
/// coordinates d of the would-be identity. No algebraic laws are assumed.
/// Indices are 0-based here and in JSON, 1-based in human-readable reports.
struct StructureTable {
  int n = 0;
  std::int64_t modulus = 2;
  std::vector<Zmod> c;  // (i*n + j)*n + l
  VecZ d;

  StructureTable() : d(zvec(0, 2)) {}
  StructureTable(int n_, std::int64_t q) : n(n_), modulus(q), c(std::size_t(n_) * n_ * n_, Zmod(0, q)), d(zvec(n_, q)) {}

  Zmod& at(int i, int j, int l) { return c[(std::size_t(i) * n + j) * n + l]; }
  const Zmod& at(int i, int j, int l) const { return c[(std::size_t(i) * n + j) * n + l]; }
  /// The product vector e_i e_j.
  VecZ row(int i, int j) const {
    VecZ v = zvec(n, modulus);
    for (int l = 0; l < n; ++l) v(l) = at(i, j, l);
    return v;
  }
  void set_row(int i, int j, const VecZ& v) {
    for (int l = 0; l < n; ++l) at(i, j, l) = v(l);
  }

  /// Serialization in the fixed table order (c in (i,j,l) nesting, then d);
  /// orbit-minimal representatives are minimal in this order.
  std::string key() const;
  friend bool operator==(const StructureTable& a, const StructureTable& b) {
    return a.n == b.n && a.modulus == b.modulus && a.key() == b.key();
  }
};

/// One violated defining equation, identified by kind and index tuple.
struct Violation {
  enum class Kind { commutativity, associativity, unit };
  Kind kind;
  std::array<int, 4> idx;  // comm: (i,j,l, -1); assoc: (i,j,k,l); unit: (j,l, -1,-1)
  std::string describe() const;
};

std::vector<Violation> table_violations(const StructureTable& t);

/// A table that passed validation, with the multiplication operators
/// M_i = (c[i][j][l])_{l,j} and the trace vector cached.
class BasedAlgebra {
 public:
  static std::optional<BasedAlgebra> validate(const StructureTable& t, std::vector<Violation>* out = nullptr);
  /// Validate-or-throw, for tables that are known to be algebras.
  static BasedAlgebra require(const StructureTable& t, const char* what = "table");

  const StructureTable& table() const { return table_; }
  int rank() const { return table_.n; }
  std::int64_t modulus() const { return table_.modulus; }
  const VecZ& one() const { return table_.d; }
  /// Multiplication-by-e_i operator (acts on coordinate vectors).
  const MatZ& mult_op(int i) const { return mult_ops_[i]; }
  /// Tr(e_m), the trace of multiplication by e_m.
  const VecZ& trace_vec() const { return trace_vec_; }
  /// True when the table is in B_n^1 form: d = e_1, c[0][j][l] = delta_{jl}.
  bool normalized() const { return normalized_; }

  VecZ multiply(const VecZ& u, const VecZ& v) const;
  /// Multiplication-by-u operator.
  MatZ mult_operator(const VecZ& u) const;
  Zmod trace(const VecZ& u) const { return (trace_vec_.transpose() * u)(0); }
  VecZ power(const VecZ& u, int e) const;

  friend bool operator==(const BasedAlgebra& a, const BasedAlgebra& b) { return a.table_ == b.table_; }

 private:
  explicit BasedAlgebra(const StructureTable& t);
  StructureTable table_;
  std::vector<MatZ> mult_ops_;
  VecZ trace_vec_;
  bool normalized_ = false;
};

/// Gram determinant of the trace form, det(Tr(e_i e_j)).
Zmod discriminant(const BasedAlgebra& a);
bool is_etale(const BasedAlgebra& a);

/// O^n with componentwise multiplication; d = (1,...,1), c[i][j][l] = [i=j=l].
BasedAlgebra make_split(int n, std::int64_t q);
/// k[x_1,...,x_{n-1}]/(x_1,...,x_{n-1})^2 on the basis (1, x_1, ..., x_{n-1}).
BasedAlgebra make_bullet(int n, std::int64_t q);
/// k[x]/x^n on the basis (1, x, ..., x^{n-1}).
BasedAlgebra make_power_quotient(int n, std::int64_t q);
/// Direct product on the concatenated bases.
BasedAlgebra product(const BasedAlgebra& a, const BasedAlgebra& b);

/// k[x_1,...,x_d]/(m^3 + V) for V a span of degree-2 monomial combinations:
/// rank 1 + d + r with r = codim(V). Basis: 1, the x_i, then the
/// lexicographically least degree-2 monomials completing V. The relation span
/// lives in the d(d+1)/2-dimensional degree-2 monomial space, coordinates
/// ordered x_a x_b with (a, b) lexicographic, a <= b.
BasedAlgebra make_truncated_local(int d, const Subspace& relation_span, std::int64_t q);
/// Number of degree-2 monomials in d variables, the ambient dimension above.
inline Eigen::Index degree2_monomials(int d) { return Eigen::Index(d) * (d + 1) / 2; }

/// The rank-3 good-basis family on (1, alpha, beta):
///   alpha^2 = -ac + b alpha - a beta,
///   beta^2  = -bd + d alpha - c beta,
///   alpha beta = -ad.
/// Valid for every (a, b, c, d).
BasedAlgebra make_cubic(Zmod a, Zmod b, Zmod c, Zmod d, std::int64_t q);

/// True iff the monomials of total degree <= n-1 in the given elements
/// (including the empty monomial 1) span the whole algebra.
bool generates(const BasedAlgebra& a, const std::vector<VecZ>& gens);

/// Weighted cone scaling on a normalized table: c[i][j][l] picks up t^2 when
/// l = 0 and t otherwise (i, j >= 1); forced cells untouched. t = 0 gives the
/// table of bullet.
StructureTable scale_weighted(const BasedAlgebra& a, Zmod t);

/// Basis change to B_n^1 form over a field: the first basis vector becomes the
/// multiplicative identity. Deterministic: pivots on the smallest index i with
/// d_i a unit. Returns the normalized algebra and the matrix realizing it,
/// act(witness, a) = normalized.
struct Normalized {
  BasedAlgebra algebra;
  MatZ witness;
};
Normalized normalize(const BasedAlgebra& a);

/// JSON object format {"n":int,"modulus":int,"c":[[[int]]],"d":[int]};
/// the reader rejects unreduced residues and malformed shapes.
std::string table_to_json(const StructureTable& t);
StructureTable table_from_json(const std::string& text);

}  // namespace algmod

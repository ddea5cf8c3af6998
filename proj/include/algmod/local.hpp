// Local structure: nilradical, idempotent decomposition, m-adic filtration,
// good bases of symmetric bilinear maps, minimal generating subspaces, and the
// canonical-data extraction / reconstruction pair for local algebras with
// prime residue field.
#pragma once

#include <algmod/algebra.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace algmod {

/// Ideal of nilpotent elements, computed as the kernel of x -> x^(p^k) for
/// the least p^k >= n (an F_p-linear map).
Subspace nilradical(const BasedAlgebra& a);

/// All idempotents, by exhaustive scan of the q^n elements.
std::vector<VecZ> idempotents(const BasedAlgebra& a, std::int64_t budget = search_budget());

/// True when the only idempotents are 0 and 1 (unique maximal ideal).
bool is_local(const BasedAlgebra& a, std::int64_t budget = search_budget());
/// Local with residue field F_p, i.e. the nilradical has dimension n-1.
bool is_local_prime_residue(const BasedAlgebra& a);

/// Factors e*A over the primitive idempotents, with induced bases.
std::vector<BasedAlgebra> decompose_local(const BasedAlgebra& a, std::int64_t budget = search_budget());

/// Dimension sequence m_i = dim m^i / m^(i+1) of a local algebra with prime
/// residue field, m_0 = 1, together with the chain of powers of m.
struct Filtration {
  std::vector<int> dims;
  std::vector<Subspace> powers;  // powers[i] = m^(i+1); decreasing chain ending at 0
};
Filtration filtration(const BasedAlgebra& a);

/// A symmetric bilinear map V x V -> W over F_q in coordinates.
struct SymBilinearMap {
  int dim_v = 0;
  int dim_w = 0;
  std::int64_t q = 2;
  std::vector<VecZ> values;  // (i*dim_v + j) -> value on (e_i, e_j), symmetric

  SymBilinearMap(int m, int n, std::int64_t q_)
      : dim_v(m), dim_w(n), q(q_), values(std::size_t(m) * m, zvec(n, q_)) {}
  const VecZ& value(int i, int j) const { return values[std::size_t(i) * dim_v + j]; }
  void set_value(int i, int j, const VecZ& w) {
    values[std::size_t(i) * dim_v + j] = w;
    values[std::size_t(j) * dim_v + i] = w;
  }
  /// Bilinear extension to arbitrary coordinate vectors.
  VecZ apply(const VecZ& u, const VecZ& v) const;
  /// Span of the values on a subspace: (U, U).
  Subspace span_on(const Subspace& u) const;
  Subspace image() const { return span_on(Subspace::full(dim_v, q)); }
  /// Restriction to a subspace, in the coordinates of its echelon basis.
  SymBilinearMap restrict_to(const Subspace& u) const;
};

/// Least-dimension subspace U with (U, U) = (V, V), in the fixed subspace
/// order (dimension ascending, then echelon-key ascending).
Subspace min_generating_subspace(const SymBilinearMap& f, std::int64_t budget = search_budget());

/// A basis x_1, ..., x_m with (x_i, x_{i+1}) not in (V_i, V_i) for all i,
/// where V_i is the span of the first i vectors. Requires (V,V) = W and that
/// no proper subspace generates; the chain condition is re-verified before
/// returning. Returns the basis as rows.
std::optional<MatZ> good_basis(const SymBilinearMap& f);
/// The re-verification used above, exposed for tests.
bool good_basis_chain_holds(const SymBilinearMap& f, const MatZ& basis);

/// Canonical data determining a local F_q-algebra with residue field F_q:
/// the filtration dimensions, the minimal-generating dimension s, the
/// dimension sequence w_0 <= w_1 < ... < w_s of the (V_i, V_i), and the
/// sparse structure constants g_{ij} g_{1l} = sum c_{ijluv} g_{uv} on the
/// recorded index blocks. Indices here are 1-based as in reports.
struct CanonicalData {
  std::vector<int> m_seq;
  int s = 0;
  std::vector<int> w_dims;  // w_0 .. w_s
  std::map<std::tuple<int, int, int, int, int>, std::int64_t> constants;
  std::int64_t q = 2;

  std::string to_json() const;
  static CanonicalData from_json(const std::string& text);
  friend bool operator==(const CanonicalData& a, const CanonicalData& b) {
    return a.m_seq == b.m_seq && a.s == b.s && a.w_dims == b.w_dims && a.constants == b.constants &&
           a.q == b.q;
  }
};

/// Full extraction result: the data plus the adapted basis that realized it
/// (columns of `basis` are the g_{uv} in block order), for tests.
struct Extraction {
  CanonicalData data;
  MatZ basis;
};

/// The deterministic extraction recipe. Every choice point is resolved by
/// "first in the fixed order"; surjectivity of m^(i-1)/m^i (x) Vbar ->
/// m^i/m^(i+1) is asserted at every level.
Extraction extract_canonical(const BasedAlgebra& a, std::int64_t budget = search_budget());

/// Rebuild a local based algebra from canonical data. Throws
/// std::invalid_argument naming the offending index block when the recursion
/// demands a constant the data cannot supply.
BasedAlgebra reconstruct(const CanonicalData& data);

}  // namespace algmod

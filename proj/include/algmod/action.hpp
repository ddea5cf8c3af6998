// The GL_n action on based algebras, isomorphism testing with invariant
// pre-filters and pruned column search, automorphism groups, and the
// split-algebra stabilizer check.
#pragma once

#include <algmod/local.hpp>

#include <optional>
#include <vector>

namespace algmod {

/// An element of GL_n over the coefficient field with its inverse cached.
struct InvertibleMatrix {
  MatZ mat;
  MatZ inv;
  explicit InvertibleMatrix(const MatZ& m) : mat(m), inv(inverse(m)) {}
};

/// The left action: (M . A) has multiplication M mu(M^-1 x, M^-1 y) and
/// identity coordinates M d. Functorial: act(MN, A) = act(M, act(N, A)).
BasedAlgebra act(const InvertibleMatrix& m, const BasedAlgebra& a);
inline BasedAlgebra act(const MatZ& m, const BasedAlgebra& a) { return act(InvertibleMatrix(m), a); }

/// Cheap isomorphism invariants compared before any search: discriminant
/// vanishing, the nilpotent filtration signature, and the idempotent count.
struct InvariantSig {
  bool delta_nonzero = false;
  Eigen::Index nilradical_dim = 0;
  std::vector<int> filtration;  // dims of N^i/N^(i+1), prefixed by n - dim N
  std::int64_t idempotent_count = 0;
  friend bool operator==(const InvariantSig& a, const InvariantSig& b) {
    return a.delta_nonzero == b.delta_nonzero && a.nilradical_dim == b.nilradical_dim &&
           a.filtration == b.filtration && a.idempotent_count == b.idempotent_count;
  }
};
InvariantSig invariant_sig(const BasedAlgebra& a, std::int64_t budget = search_budget());

/// A witness M with act(M, A) = B, or nullopt. Search happens over H after
/// normalizing both sides (any isomorphism fixes 1); witnesses are mapped
/// back to the original bases and re-verified by act before being returned.
std::optional<MatZ> isomorphic(const BasedAlgebra& a, const BasedAlgebra& b,
                               std::int64_t budget = search_budget());

/// The full stabilizer of A's table in GL_n, i.e. Aut(A) as matrices.
/// Contains the identity; closed under product and inverse.
std::vector<MatZ> automorphisms(const BasedAlgebra& a, std::int64_t budget = search_budget());

/// True iff the GL_n-stabilizer of the split table is exactly the n!
/// permutation matrices.
bool check_split_stabilizer(int n, std::int64_t q, std::int64_t budget = search_budget());

}  // namespace algmod

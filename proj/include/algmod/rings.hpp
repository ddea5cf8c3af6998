// Finite commutative rings of order p^n presented by additive invariants and
// a generator multiplication table, and the reduction to F_p-algebras.
#pragma once

#include <algmod/algebra.hpp>

#include <optional>
#include <string>
#include <vector>

namespace algmod {

/// A coordinate vector in the group prod_i Z/p^{a_i} (entry i in [0, p^{a_i})).
using GroupElem = std::vector<std::int64_t>;

/// A ring of order p^n: additive invariants a_1 >= ... >= a_m (summing to n)
/// and the products of the additive generators x_i, extended Z-bilinearly.
struct FiniteRing {
  std::int64_t p = 2;
  std::vector<int> a;
  std::vector<std::vector<GroupElem>> mult;  // mult[i][j] = x_i * x_j
  std::optional<GroupElem> one;

  int generators() const { return static_cast<int>(a.size()); }
  int rank() const {
    int n = 0;
    for (int e : a) n += e;
    return n;
  }
  std::int64_t order_of_coord(int i) const {
    std::int64_t o = 1;
    for (int k = 0; k < a[i]; ++k) o *= p;
    return o;
  }

  GroupElem zero() const { return GroupElem(a.size(), 0); }
  GroupElem add(const GroupElem& x, const GroupElem& y) const;
  GroupElem scale(std::int64_t k, const GroupElem& x) const;
  /// Bilinear extension of the generator table.
  GroupElem mul(const GroupElem& x, const GroupElem& y) const;
  std::string to_json() const;
  static FiniteRing from_json(const std::string& text);
};

/// Bilinear well-definedness, commutativity, associativity on generator
/// triples, and existence/correctness of the identity. On success, `unit`
/// holds the verified (given or found) identity element.
struct RingCheck {
  std::vector<std::string> violations;
  std::optional<GroupElem> unit;
  bool ok() const { return violations.empty(); }
};
RingCheck validate_ring(const FiniteRing& r);

/// The rank-n F_p-algebra on the basis z = (p^j x_i), i ascending then j
/// ascending, with the structure constants of R reduced mod p. Returns the
/// additive invariants alongside; the pair (a, algebra class) separates
/// non-isomorphic rings.
struct FpReduction {
  std::vector<int> a;
  BasedAlgebra algebra;
};
FpReduction to_fp_algebra(const FiniteRing& r);

/// All rings of order p^n up to ring isomorphism (brute force over additive
/// types and generator tables, de-duplicated by the additive automorphism
/// action). Representatives are minimal in the serialization order.
std::vector<FiniteRing> enumerate_rings(std::int64_t p, int n, std::int64_t budget = search_budget());

/// #rings(p^n) <= p^(n^2+n) * #algebra-classes(n, p), both sides exact.
struct BoundCheck {
  std::int64_t ring_count = 0;
  std::int64_t algebra_classes = 0;
  std::int64_t bound = 0;  // p^(n^2+n) * algebra_classes
  bool holds() const { return ring_count <= bound; }
};
BoundCheck bound_check(std::int64_t p, int n, std::int64_t budget = search_budget());

}  // namespace algmod

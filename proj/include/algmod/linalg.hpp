// Exact linear algebra over F_p: reduced row echelon, kernels, affine solve,
// canonical subspaces, and exhaustive iteration of GL_n / H / subspaces.
#pragma once

#include <algmod/zmod.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace algmod {

/// Thrown when an exhaustive search would exceed the configured node budget.
/// Searches refuse explicitly instead of truncating.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Node-count ceiling for exhaustive searches; reads ALGMOD_BUDGET once.
std::int64_t search_budget();

bool is_prime(std::int64_t m);
void require_prime(std::int64_t m, const char* where);

/// A linear subspace of F_p^ambient in its unique reduced-row-echelon basis.
/// Rows are pivot-normalized and pairwise pivot-distinct, so equality of
/// subspaces is equality of representations.
class Subspace {
 public:
  Subspace(Eigen::Index ambient, std::int64_t q) : ambient_(ambient), q_(q), basis_(zeros(0, ambient, q)) {}
  static Subspace from_span(const MatZ& rows);
  static Subspace full(Eigen::Index ambient, std::int64_t q);

  Eigen::Index ambient() const { return ambient_; }
  std::int64_t modulus() const { return q_; }
  Eigen::Index dim() const { return basis_.rows(); }
  const MatZ& basis() const { return basis_; }

  bool contains(const VecZ& v) const;
  bool contains(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;
  /// Residue of v modulo the subspace (eliminate pivot coordinates).
  VecZ reduce(const VecZ& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
  /// Column-major flattening of the basis, for deterministic ordering.
  std::string key() const;

 private:
  Eigen::Index ambient_;
  std::int64_t q_;
  MatZ basis_;
};

struct RreResult {
  Eigen::Index rank = 0;
  MatZ echelon;
  std::vector<Eigen::Index> pivots;
  Subspace kernel;
};

/// Reduced row echelon form over a prime field, plus the null space.
RreResult rre_form(const MatZ& a);

/// One solution of A x = b, or the infeasibility certificate y with
/// y^T A = 0 and y^T b = 1. Prime modulus only.
struct AffineSolve {
  std::optional<VecZ> solution;
  std::optional<VecZ> certificate;
  bool feasible() const { return solution.has_value(); }
};
AffineSolve solve_affine(const MatZ& a, const VecZ& b);

/// Determinant / inverse by Gaussian elimination (prime modulus).
Zmod det(const MatZ& a);
std::optional<MatZ> try_inverse(const MatZ& a);
MatZ inverse(const MatZ& a);
Eigen::Index rank_of(const MatZ& a);

/// #GL_n(F_q) = prod_{i<n} (q^n - q^i); 1 for n = 0.
std::int64_t gl_order(int n, std::int64_t q);
/// #H(F_q) = q^(n-1) * #GL_{n-1}(F_q) for n >= 1 (first column pinned to e_1).
std::int64_t h_order(int n, std::int64_t q);

/// Odometer over all matrices with a set of frozen entries, in lexicographic
/// order on the column-major flattened entry vector. This flattening order is
/// the project-wide "fixed matrix order": every least-witness or minimal-
/// representative tie-break refers to it.
class MatrixStream {
 public:
  MatrixStream(Eigen::Index rows, Eigen::Index cols, std::int64_t q);
  /// Freeze entry (r, c) to the given value before the first next().
  void freeze(Eigen::Index r, Eigen::Index c, Zmod value);
  std::optional<MatZ> next();
  void reset();
  std::int64_t combinations() const;

 private:
  Eigen::Index rows_, cols_;
  std::int64_t q_;
  MatZ cur_;
  std::vector<bool> frozen_;  // column-major
  bool started_ = false, done_ = false;
};

/// All of GL_n(F_q) in the fixed matrix order. Guarded: refuses when
/// q^(n^2) exceeds the budget.
class GlStream {
 public:
  GlStream(int n, std::int64_t q, std::int64_t budget = search_budget());
  std::optional<MatZ> next();
  void reset() { inner_.reset(); }

 private:
  MatrixStream inner_;
};

/// All invertible matrices whose first column is (1,0,...,0).
class HStream {
 public:
  HStream(int n, std::int64_t q, std::int64_t budget = search_budget());
  std::optional<MatZ> next();
  void reset() { inner_.reset(); }

 private:
  MatrixStream inner_;
};

std::vector<MatZ> collect_gl(int n, std::int64_t q, std::int64_t budget = search_budget());
std::vector<MatZ> collect_h(int n, std::int64_t q, std::int64_t budget = search_budget());

/// Odometer over F_q^n in lexicographic order, starting at the zero vector.
class VectorStream {
 public:
  VectorStream(Eigen::Index n, std::int64_t q) : q_(q), cur_(zvec(n, q)) {}
  std::optional<VecZ> next();
  void reset() {
    cur_ = zvec(cur_.size(), q_);
    started_ = done_ = false;
  }

 private:
  std::int64_t q_;
  VecZ cur_;
  bool started_ = false, done_ = false;
};

/// All subspaces of F_q^ambient of the given dimension, sorted by the
/// column-major flattening of their echelon bases.
std::vector<Subspace> subspaces_of_dim(Eigen::Index ambient, Eigen::Index dim, std::int64_t q,
                                       std::int64_t budget = search_budget());
/// All subspaces, dimension ascending (the fixed subspace order).
std::vector<Subspace> all_subspaces(Eigen::Index ambient, std::int64_t q,
                                    std::int64_t budget = search_budget());

/// Column-major serialization of entry values, the comparison key behind the
/// fixed matrix order.
std::string mat_key(const MatZ& a);

}  // namespace algmod

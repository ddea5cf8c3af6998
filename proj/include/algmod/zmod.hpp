// Residue-class scalar Z/m usable inside Eigen dense types.
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace algmod {

/// Exact residue arithmetic modulo a runtime modulus m (a prime p, or a
/// small prime power p^k for lifting computations).
///
/// A default-constructed value, and values built from integer literals via
/// `Zmod(0)` / `Zmod(1)`, carry modulus 0 and behave as plain integers until
/// they meet a moduled operand; Eigen's internal `Scalar(0)` accumulators
/// therefore combine correctly with reduced residues.
struct Zmod {
  std::int32_t v = 0;
  std::int32_t m = 0;  // 0 = untyped (plain integer semantics)

  Zmod() = default;
  Zmod(int raw) : v(raw), m(0) {}  // NOLINT: Eigen requires Scalar(int)
  Zmod(std::int64_t value, std::int64_t modulus)
      : v(static_cast<std::int32_t>(((value % modulus) + modulus) % modulus)),
        m(static_cast<std::int32_t>(modulus)) {
    if (modulus <= 0) throw std::invalid_argument("Zmod: modulus must be positive");
  }

  bool typed() const { return m != 0; }
  std::int64_t value() const { return v; }
  std::int64_t modulus() const { return m; }

  friend Zmod binop_mod(const Zmod& a, const Zmod& b) {
    Zmod r;
    r.m = a.m != 0 ? a.m : b.m;
    if (a.m != 0 && b.m != 0 && a.m != b.m)
      throw std::invalid_argument("Zmod: mixed moduli " + std::to_string(a.m) + " vs " +
                                  std::to_string(b.m));
    return r;
  }

  friend Zmod operator+(const Zmod& a, const Zmod& b) {
    Zmod r = binop_mod(a, b);
    std::int64_t s = std::int64_t(a.v) + b.v;
    r.v = static_cast<std::int32_t>(r.m ? ((s % r.m) + r.m) % r.m : s);
    return r;
  }
  friend Zmod operator-(const Zmod& a, const Zmod& b) {
    Zmod r = binop_mod(a, b);
    std::int64_t s = std::int64_t(a.v) - b.v;
    r.v = static_cast<std::int32_t>(r.m ? ((s % r.m) + r.m) % r.m : s);
    return r;
  }
  friend Zmod operator*(const Zmod& a, const Zmod& b) {
    Zmod r = binop_mod(a, b);
    std::int64_t s = std::int64_t(a.v) * b.v;
    r.v = static_cast<std::int32_t>(r.m ? ((s % r.m) + r.m) % r.m : s);
    return r;
  }
  Zmod operator-() const {
    Zmod r = *this;
    r.v = m ? (m - v) % m : -v;
    return r;
  }
  Zmod& operator+=(const Zmod& b) { return *this = *this + b; }
  Zmod& operator-=(const Zmod& b) { return *this = *this - b; }
  Zmod& operator*=(const Zmod& b) { return *this = *this * b; }

  bool is_zero() const { return v == 0; }
  /// Units of Z/m: residues coprime to m.
  bool is_unit() const;
  /// Multiplicative inverse; throws if not a unit.
  Zmod inverse() const;
  friend Zmod operator/(const Zmod& a, const Zmod& b) { return a * b.inverse(); }
  Zmod pow(std::int64_t e) const;

  friend bool operator==(const Zmod& a, const Zmod& b) { return a.v == b.v; }
  friend bool operator!=(const Zmod& a, const Zmod& b) { return a.v != b.v; }
  friend std::ostream& operator<<(std::ostream& os, const Zmod& a) { return os << a.v; }
};

inline bool Zmod::is_unit() const {
  if (m == 0) throw std::logic_error("Zmod::is_unit on untyped value");
  std::int32_t a = v, b = m;
  while (b) {
    std::int32_t t = a % b;
    a = b;
    b = t;
  }
  return a == 1;
}

inline Zmod Zmod::inverse() const {
  if (m == 0) throw std::logic_error("Zmod::inverse on untyped value");
  // extended Euclid
  std::int64_t r0 = m, r1 = v, s0 = 0, s1 = 1;
  while (r1) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw std::invalid_argument("Zmod::inverse: not a unit");
  return Zmod(s0, m);
}

inline Zmod Zmod::pow(std::int64_t e) const {
  if (m == 0) throw std::logic_error("Zmod::pow on untyped value");
  if (e < 0) return inverse().pow(-e);
  Zmod acc(1 % m, m), base = *this;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline Zmod zmod(std::int64_t value, std::int64_t modulus) { return Zmod(value, modulus); }

}  // namespace algmod

namespace Eigen {
template <>
struct NumTraits<algmod::Zmod> {
  typedef algmod::Zmod Real;
  typedef algmod::Zmod NonInteger;
  typedef algmod::Zmod Nested;
  typedef algmod::Zmod Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 4
  };
  static inline Real epsilon() { return algmod::Zmod(0); }
  static inline Real dummy_precision() { return algmod::Zmod(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace algmod {

using MatZ = Eigen::Matrix<Zmod, Eigen::Dynamic, Eigen::Dynamic>;
using VecZ = Eigen::Matrix<Zmod, Eigen::Dynamic, 1>;

/// Zero matrix / vector carrying an explicit modulus on every entry.
inline MatZ zeros(Eigen::Index rows, Eigen::Index cols, std::int64_t q) {
  return MatZ::Constant(rows, cols, Zmod(0, q));
}
inline VecZ zvec(Eigen::Index n, std::int64_t q) { return VecZ::Constant(n, Zmod(0, q)); }
inline MatZ eye(Eigen::Index n, std::int64_t q) {
  MatZ a = zeros(n, n, q);
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = Zmod(1, q);
  return a;
}

inline bool operator==(const MatZ& a, const MatZ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}
inline bool operator!=(const MatZ& a, const MatZ& b) { return !(a == b); }
inline bool operator==(const VecZ& a, const VecZ& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}
inline bool operator!=(const VecZ& a, const VecZ& b) { return !(a == b); }
inline bool is_zero_vec(const VecZ& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!a(i).is_zero()) return false;
  return true;
}

}  // namespace algmod

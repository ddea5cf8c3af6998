// Closed-form evaluators for the dimension formulas: the Z_{d,r} lower bound,
// its mod-3 closed form, the Hilbert-scheme dimension transfer, and the
// c_alpha / B(x, y) optimization. All exact rational except the grid scan.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace algmod {

/// Exact rational on int64 (reduced, positive denominator).
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}  // NOLINT
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }
  void reduce() {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator/(Rat a, Rat b) { return Rat(a.num * b.den, a.den * b.num); }
  friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(Rat a, Rat b) { return !(a == b); }
  friend bool operator<(Rat a, Rat b) { return a.num * b.den < b.num * a.den; }
  friend bool operator>(Rat a, Rat b) { return b < a; }
  friend bool operator<=(Rat a, Rat b) { return !(b < a); }
  friend bool operator>=(Rat a, Rat b) { return !(a < b); }
  bool is_integer() const { return den == 1; }
  double to_double() const { return double(num) / double(den); }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

/// r(d(d+1)/2 - r) + n^2 - (d^2 + dr), requiring r <= d(d+1)/2, n = 1+d+r.
std::int64_t zdr_bound(std::int64_t n, std::int64_t d, std::int64_t r);

/// The mod-3 closed form of the lower bound, with the branch used and a
/// cross-check against the exhaustive maximum over admissible d.
struct LowerBound {
  Rat value;
  int branch = 0;  // n mod 3
};
LowerBound lower_bound(std::int64_t n);
/// Exhaustive max of zdr_bound(n, d, n-1-d) over admissible d.
std::int64_t lower_bound_by_scan(std::int64_t n);

/// Argmax of the Z_{d,r} expression over d in [0, n-1] with r = n-1-d,
/// smallest d on ties; equals floor((2n-2)/3).
std::int64_t optimal_d(std::int64_t n);

/// dim Hilb_n(A^d) = dimB - n^2 + nd, an equality when d >= n-1 and an upper
/// bound otherwise.
struct HilbDim {
  std::int64_t value = 0;
  bool exact = false;
};
HilbDim hilb_dim(std::int64_t n, std::int64_t d, std::int64_t dim_b);

/// c_alpha = 2/27 for alpha >= 2/3, alpha^2 (1 - alpha) / 2 below.
Rat c_alpha(const Rat& alpha);

/// Grid argmax of B(x,y) = x^2(1-x-y)/2 + y^2(1-x-y)/2 + y(1-x-y)^2/2 over
/// {0 <= y <= x <= alpha, x + y <= 1}.
struct GridMax {
  double x = 0, y = 0, value = 0;
};
double b_of(double x, double y);
GridMax maximize_b(double alpha, double grid_step);

}  // namespace algmod

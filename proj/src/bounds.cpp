#include <algmod/bounds.hpp>

namespace algmod {

namespace {

// The Z_{d,r} expression as a polynomial, defined for every integer pair.
std::int64_t zdr_expression(std::int64_t n, std::int64_t d, std::int64_t r) {
  return r * (d * (d + 1) / 2 - r) + n * n - (d * d + d * r);
}

}  // namespace

std::int64_t zdr_bound(std::int64_t n, std::int64_t d, std::int64_t r) {
  if (n < 0 || d < 0 || r < 0) throw std::invalid_argument("zdr_bound: n, d, r must be nonnegative");
  if (n != 1 + d + r)
    throw std::invalid_argument("zdr_bound: n = 1 + d + r violated (n=" + std::to_string(n) + ", d=" +
                                std::to_string(d) + ", r=" + std::to_string(r) + ")");
  if (r > d * (d + 1) / 2)
    throw std::invalid_argument("zdr_bound: r <= d(d+1)/2 violated (d=" + std::to_string(d) + ", r=" +
                                std::to_string(r) + ")");
  return zdr_expression(n, d, r);
}

LowerBound lower_bound(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("lower_bound: n must be >= 1");
  LowerBound out;
  out.branch = static_cast<int>(n % 3);
  Rat n1(n);
  Rat cubic = Rat(2, 27) * n1 * n1 * n1 + Rat(1, 9) * n1 * n1;
  switch (out.branch) {
    case 0:
      out.value = cubic + Rat(5, 3) * n1 - Rat(1);
      break;
    case 1:
      out.value = cubic + Rat(14, 9) * n1 - Rat(20, 27);
      break;
    default:
      out.value = cubic + Rat(5, 3) * n1 - Rat(37, 27);
      break;
  }
  return out;
}

std::int64_t lower_bound_by_scan(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("lower_bound_by_scan: n must be >= 1");
  bool any = false;
  std::int64_t best = 0;
  for (std::int64_t d = 0; d <= n - 1; ++d) {
    std::int64_t r = n - 1 - d;
    if (r > d * (d + 1) / 2) continue;
    std::int64_t v = zdr_expression(n, d, r);
    if (!any || v > best) best = v;
    any = true;
  }
  if (!any) throw std::logic_error("lower_bound_by_scan: no admissible d");
  return best;
}

std::int64_t optimal_d(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("optimal_d: n must be >= 1");
  // Scan the closed-form expression over all d (the theorem optimizes the
  // polynomial; at n = 2 the only tie with an inadmissible pair occurs).
  std::int64_t best_d = 0, best = zdr_expression(n, 0, n - 1);
  for (std::int64_t d = 1; d <= n - 1; ++d) {
    std::int64_t v = zdr_expression(n, d, n - 1 - d);
    if (v > best) {
      best = v;
      best_d = d;
    }
  }
  return best_d;
}

HilbDim hilb_dim(std::int64_t n, std::int64_t d, std::int64_t dim_b) {
  if (n < 0 || d < 0) throw std::invalid_argument("hilb_dim: n, d must be nonnegative");
  return {dim_b - n * n + n * d, d >= n - 1};
}

Rat c_alpha(const Rat& alpha) {
  if (alpha < Rat(0)) throw std::invalid_argument("c_alpha: alpha must be nonnegative");
  if (alpha >= Rat(2, 3)) return Rat(2, 27);
  return alpha * alpha * (Rat(1) - alpha) / Rat(2);
}

double b_of(double x, double y) {
  double z = 1.0 - x - y;
  return x * x * z / 2 + y * y * z / 2 + y * z * z / 2;
}

GridMax maximize_b(double alpha, double grid_step) {
  if (grid_step <= 0) throw std::invalid_argument("maximize_b: grid_step must be positive");
  GridMax best{0, 0, b_of(0, 0)};
  for (double x = 0; x <= alpha + 1e-12; x += grid_step) {
    for (double y = 0; y <= x + 1e-12 && x + y <= 1 + 1e-12; y += grid_step) {
      double v = b_of(x, y);
      if (v > best.value) best = {x, y, v};
    }
  }
  return best;
}

}  // namespace algmod

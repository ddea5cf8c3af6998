#include <doctest.h>

#include <algmod/bounds.hpp>

#include <cmath>

using namespace algmod;

TEST_CASE("rational arithmetic") {
  CHECK(Rat(6, 4) == Rat(3, 2));
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
  CHECK(Rat(-4, -6) == Rat(2, 3));
  CHECK(Rat(1, -2).num == -1);
  CHECK(Rat(5, 3) > Rat(3, 2));
  CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
}

TEST_CASE("zdr_bound values and preconditions") {
  CHECK(zdr_bound(8, 4, 3) == 57);   // 3*(10-3) + 64 - 28
  CHECK(zdr_bound(2, 1, 0) == 3);    // 0 + 4 - 1
  CHECK(zdr_bound(4, 2, 1) == 12);   // 1*(3-1) + 16 - 6
  CHECK_THROWS_WITH_AS(zdr_bound(4, 1, 2), doctest::Contains("r <= d(d+1)/2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(zdr_bound(5, 2, 1), doctest::Contains("n = 1 + d + r"), std::invalid_argument);
  CHECK_THROWS_AS(zdr_bound(3, -1, 3), std::invalid_argument);
}

TEST_CASE("lower_bound: branch values and the scan cross-check") {
  auto b8 = lower_bound(8);
  CHECK(b8.branch == 2);
  CHECK(b8.value == Rat(57));
  CHECK(lower_bound(10).value == Rat(100));
  CHECK(lower_bound(10).branch == 1);
  CHECK(lower_bound(11).value == Rat(129));
  CHECK(lower_bound(3).value == Rat(7));
  for (int n = 1; n <= 500; ++n) {
    auto lb = lower_bound(n);
    CHECK(lb.value.is_integer());
    CHECK(lb.value == Rat(lower_bound_by_scan(n)));
  }
}

TEST_CASE("lower_bound exceeds n^2 exactly from 11 on") {
  for (int n = 1; n <= 100; ++n) {
    bool above = lower_bound(n).value > Rat(std::int64_t(n) * n);
    CHECK(above == (n >= 11));
  }
  CHECK(lower_bound(10).value == Rat(100));  // boundary: equality at n = 10
}

TEST_CASE("optimal_d equals floor((2n-2)/3), by scan") {
  CHECK(optimal_d(8) == 4);
  CHECK(optimal_d(3) == 1);
  CHECK(optimal_d(100) == 66);
  for (int n = 1; n <= 500; ++n) CHECK(optimal_d(n) == (2 * n - 2) / 3);
}

TEST_CASE("hilb_dim transfer and equality flag") {
  auto h = hilb_dim(3, 2, 9);
  CHECK(h.value == 6);
  CHECK(h.exact);
  CHECK(hilb_dim(1, 0, 1).value == 0);
  auto h2 = hilb_dim(2, 1, 4);
  CHECK(h2.value == 2);
  CHECK(h2.exact);
  CHECK(!hilb_dim(4, 2, 16).exact);
}

TEST_CASE("c_alpha: seam continuity and spot values") {
  CHECK(c_alpha(Rat(2, 3)) == Rat(2, 27));
  // the polynomial branch evaluated at the seam agrees
  Rat seam = Rat(2, 3) * Rat(2, 3) * (Rat(1) - Rat(2, 3)) / Rat(2);
  CHECK(seam == Rat(2, 27));
  CHECK(c_alpha(Rat(1, 2)) == Rat(1, 16));
  CHECK(c_alpha(Rat(1)) == Rat(2, 27));
  CHECK_THROWS_AS(c_alpha(Rat(-1, 2)), std::invalid_argument);
  // nondecreasing on [0, 2/3]
  Rat prev(0);
  for (int k = 1; k <= 20; ++k) {
    Rat a(k, 30);
    if (a > Rat(2, 3)) break;
    Rat v = c_alpha(a);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("maximize_b finds the boundary maximum at (alpha, 0)") {
  for (double alpha : {0.5, 0.55, 0.6, 2.0 / 3.0}) {
    GridMax gm = maximize_b(alpha, 1e-3);
    CHECK(std::abs(gm.x - alpha) <= 1e-3 + 1e-9);
    CHECK(std::abs(gm.y) <= 1e-3 + 1e-9);
    CHECK(std::abs(gm.value - alpha * alpha * (1 - alpha) / 2) <= 1e-3);
  }
  // argmax y-coordinate is 0 along [1/2, 2/3] at coarser resolution
  for (double alpha = 0.5; alpha <= 2.0 / 3.0 + 1e-9; alpha += 1e-2) {
    GridMax gm = maximize_b(alpha, 1e-2);
    CHECK(std::abs(gm.y) <= 1e-9);
  }
}

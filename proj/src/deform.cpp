#include <algmod/deform.hpp>

#include <algmod/linalg.hpp>

#include <vector>

namespace algmod {

namespace {

// Jacobian of the defining polynomials at the point, as dense rows over F_p.
// Cells with an index 0 are forced in B1 and carry no unknown; their values
// still enter the coefficients.
MatZ tangent_jacobian(const BasedAlgebra& a, Space space, Eigen::Index& vars_out) {
  const int n = a.rank();
  const std::int64_t q = a.modulus();
  require_prime(q, "tangent_dim");
  const bool full = space == Space::B;
  if (!full && !a.normalized()) throw std::invalid_argument("tangent_dim: B1 requires a normalized table");

  auto free_cell = [&](int i, int j) { return full || (i >= 1 && j >= 1); };
  auto cell_var = [&](int i, int j, int l) -> Eigen::Index {
    if (full) return (Eigen::Index(i) * n + j) * n + l;
    return (Eigen::Index(i - 1) * (n - 1) + (j - 1)) * n + l;
  };
  const Eigen::Index vars = full ? Eigen::Index(n) * n * n + n : Eigen::Index(n - 1) * (n - 1) * n;
  auto d_var = [&](int i) -> Eigen::Index { return Eigen::Index(n) * n * n + i; };
  vars_out = vars;

  std::vector<VecZ> rows;
  const int lo = full ? 0 : 1;
  auto value = [&](int i, int j, int l) { return a.table().at(i, j, l); };

  for (int i = lo; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        VecZ row = zvec(vars, q);
        row(cell_var(i, j, l)) += Zmod(1, q);
        row(cell_var(j, i, l)) -= Zmod(1, q);
        rows.push_back(row);
      }
  for (int i = lo; i < n; ++i)
    for (int j = lo; j < n; ++j)
      for (int k = lo; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          VecZ row = zvec(vars, q);
          for (int m = 0; m < n; ++m) {
            if (free_cell(i, j)) row(cell_var(i, j, m)) += value(m, k, l);
            if (free_cell(m, k)) row(cell_var(m, k, l)) += value(i, j, m);
            if (free_cell(j, k)) row(cell_var(j, k, m)) -= value(i, m, l);
            if (free_cell(i, m)) row(cell_var(i, m, l)) -= value(j, k, m);
          }
          rows.push_back(row);
        }
  if (full)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        VecZ row = zvec(vars, q);
        for (int i = 0; i < n; ++i) {
          row(cell_var(i, j, l)) += a.one()(i);
          row(d_var(i)) += value(i, j, l);
        }
        rows.push_back(row);
      }

  MatZ jac = zeros(static_cast<Eigen::Index>(rows.size()), vars, q);
  for (std::size_t r = 0; r < rows.size(); ++r) jac.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return jac;
}

}  // namespace

Eigen::Index tangent_dim(const BasedAlgebra& a, Space space) {
  if (a.rank() == 0) return 0;
  Eigen::Index vars = 0;
  MatZ jac = tangent_jacobian(a, space, vars);
  return vars - rank_of(jac);
}

SingularityReport singularity_report(const BasedAlgebra& a, Space space) {
  const std::int64_t n = a.rank();
  SingularityReport rep;
  rep.tangent = tangent_dim(a, space);
  rep.component_floor = space == Space::B ? n * n : n * (n - 1);
  bool is_bullet = n >= 1 && a.table() == make_bullet(static_cast<int>(n), a.modulus()).table();
  if (is_bullet && rep.tangent > rep.component_floor)
    rep.verdict = SingularityVerdict::certified_singular;
  else if (rep.tangent == rep.component_floor)
    rep.verdict = SingularityVerdict::smooth_consistent;
  else
    rep.verdict = SingularityVerdict::inconclusive;
  return rep;
}

StructureTable make_pi_example(std::int64_t p) {
  require_prime(p, "make_pi_example");
  const std::int64_t q = p * p;
  StructureTable t(4, q);
  t.d(0) = Zmod(1, q);
  for (int j = 0; j < 4; ++j) {
    t.at(0, j, j) = Zmod(1, q);
    if (j) t.at(j, 0, j) = Zmod(1, q);
  }
  auto set_sym = [&](int i, int j, int target) {
    t.at(i, j, target) = Zmod(p, q);
    t.at(j, i, target) = Zmod(p, q);
  };
  set_sym(1, 1, 1);  // x^2 = px
  set_sym(2, 2, 2);  // y^2 = py
  set_sym(3, 3, 3);  // z^2 = pz
  set_sym(1, 2, 3);  // xy = pz
  set_sym(2, 3, 1);  // yz = px
  set_sym(3, 1, 2);  // zx = py
  if (!table_violations(t).empty()) throw std::logic_error("make_pi_example: table invalid mod p^2");
  return t;
}

LiftResult lift_obstruction(const StructureTable& t) {
  // modulus must be p^2
  std::int64_t p = 0;
  for (std::int64_t c = 2; c * c <= t.modulus; ++c)
    if (c * c == t.modulus && is_prime(c)) p = c;
  if (p == 0) throw std::invalid_argument("lift_obstruction: modulus is not p^2 for a prime p");
  if (!table_violations(t).empty())
    throw std::invalid_argument("lift_obstruction: table is not valid mod p^2");
  const int n = t.n;
  const std::int64_t p2 = p * p, p3 = p * p * p;

  auto cvar = [&](int i, int j, int l) { return (Eigen::Index(i) * n + j) * n + l; };
  auto dvar = [&](int i) { return Eigen::Index(n) * n * n + i; };
  const Eigen::Index vars = Eigen::Index(n) * n * n + n;
  auto cval = [&](int i, int j, int l) { return t.at(i, j, l).value(); };

  std::vector<VecZ> rows;
  std::vector<Zmod> rhs;
  auto push = [&](const VecZ& row, std::int64_t f_mod_p3) {
    std::int64_t g = ((f_mod_p3 % p3) + p3) % p3;
    if (g % p2 != 0) throw std::logic_error("lift_obstruction: identity not zero mod p^2");
    rows.push_back(row);
    rhs.push_back(Zmod(-(g / p2), p));
  };

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        VecZ row = zvec(vars, p);
        row(cvar(i, j, l)) += Zmod(1, p);
        row(cvar(j, i, l)) -= Zmod(1, p);
        push(row, cval(i, j, l) - cval(j, i, l));
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          VecZ row = zvec(vars, p);
          std::int64_t f = 0;
          for (int m = 0; m < n; ++m) {
            f += cval(i, j, m) * cval(m, k, l) - cval(j, k, m) * cval(i, m, l);
            row(cvar(i, j, m)) += Zmod(cval(m, k, l), p);
            row(cvar(m, k, l)) += Zmod(cval(i, j, m), p);
            row(cvar(j, k, m)) -= Zmod(cval(i, m, l), p);
            row(cvar(i, m, l)) -= Zmod(cval(j, k, m), p);
          }
          push(row, f);
        }
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      VecZ row = zvec(vars, p);
      std::int64_t f = -(j == l ? 1 : 0);
      for (int i = 0; i < n; ++i) {
        f += t.d(i).value() * cval(i, j, l);
        row(cvar(i, j, l)) += Zmod(t.d(i).value(), p);
        row(dvar(i)) += Zmod(cval(i, j, l), p);
      }
      push(row, f);
    }

  MatZ a = zeros(static_cast<Eigen::Index>(rows.size()), vars, p);
  VecZ b = zvec(static_cast<Eigen::Index>(rows.size()), p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    b(static_cast<Eigen::Index>(r)) = rhs[r];
  }
  AffineSolve sol = solve_affine(a, b);
  LiftResult out;
  if (!sol.feasible()) {
    out.certificate = sol.certificate;
    return out;
  }
  StructureTable lifted(n, p3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        lifted.at(i, j, l) = Zmod(cval(i, j, l) + p2 * (*sol.solution)(cvar(i, j, l)).value(), p3);
  for (int i = 0; i < n; ++i) lifted.d(i) = Zmod(t.d(i).value() + p2 * (*sol.solution)(dvar(i)).value(), p3);
  if (!table_violations(lifted).empty())
    throw std::logic_error("lift_obstruction: computed lift fails validation mod p^3");
  out.lifted = lifted;
  return out;
}

}  // namespace algmod

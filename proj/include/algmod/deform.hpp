// First-order deformations: tangent-space dimensions at points of B_n and
// B_n^1 from the full Jacobian of the defining equations, and the mod-p^3
// lifting obstruction.
#pragma once

#include <algmod/algebra.hpp>

#include <optional>

namespace algmod {

/// Which moduli space the point lives in: B (all c and d cells free) or
/// B1 (d = e_1 and the row/column-1 cells forced; unknowns are the c[i][j][l]
/// with i, j >= 2).
enum class Space { B, B1 };

/// dim ker(Jacobian of the defining polynomials at the point).
Eigen::Index tangent_dim(const BasedAlgebra& a, Space space);

enum class SingularityVerdict { certified_singular, smooth_consistent, inconclusive };
struct SingularityReport {
  Eigen::Index tangent = 0;
  std::int64_t component_floor = 0;  // dim of the etale component: n^2 in B, n(n-1) in B1
  SingularityVerdict verdict = SingularityVerdict::inconclusive;
};
/// Compares the tangent dimension with the etale-component dimension. The
/// certified-singular verdict is only issued at the cone vertex (the bullet
/// table), which lies on every component.
SingularityReport singularity_report(const BasedAlgebra& a, Space space);

/// The rank-4 algebra over Z/p^2 with x^2 = px, y^2 = py, z^2 = pz, xy = pz,
/// yz = px, zx = py on the basis (1, x, y, z). Valid mod p^2; does not lift.
StructureTable make_pi_example(std::int64_t p);

/// Lift a table valid mod p^2 to mod p^3: the lift digits enter every
/// defining identity linearly, so feasibility is one affine system over F_p.
struct LiftResult {
  std::optional<StructureTable> lifted;      // passes validate mod p^3
  std::optional<VecZ> certificate;           // y with y^T A = 0, y^T b != 0
  bool feasible() const { return lifted.has_value(); }
};
LiftResult lift_obstruction(const StructureTable& t);

}  // namespace algmod

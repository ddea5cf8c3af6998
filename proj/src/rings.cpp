#include <algmod/rings.hpp>

#include <algmod/classify.hpp>

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace algmod {

GroupElem FiniteRing::add(const GroupElem& x, const GroupElem& y) const {
  GroupElem z(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) z[i] = (x[i] + y[i]) % order_of_coord(static_cast<int>(i));
  return z;
}

GroupElem FiniteRing::scale(std::int64_t k, const GroupElem& x) const {
  GroupElem z(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t o = order_of_coord(static_cast<int>(i));
    z[i] = ((x[i] * (k % o)) % o + o) % o;
  }
  return z;
}

GroupElem FiniteRing::mul(const GroupElem& x, const GroupElem& y) const {
  GroupElem z = zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (y[j] == 0) continue;
      z = add(z, scale(x[i] * y[j], mult[i][j]));
    }
  }
  return z;
}

namespace {

std::string elem_str(const GroupElem& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

GroupElem generator(const FiniteRing& r, int i) {
  GroupElem x = r.zero();
  x[i] = 1;
  return x;
}

// All |G| elements in odometer order.
std::vector<GroupElem> all_elements(const FiniteRing& r) {
  std::vector<GroupElem> out;
  GroupElem cur = r.zero();
  while (true) {
    out.push_back(cur);
    int i = r.generators() - 1;
    while (i >= 0) {
      if (cur[i] + 1 < r.order_of_coord(i)) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::string table_str(const FiniteRing& r) {
  std::string s;
  for (const auto& row : r.mult)
    for (const auto& e : row) s += elem_str(e);
  return s;
}

}  // namespace

RingCheck validate_ring(const FiniteRing& r) {
  RingCheck out;
  const int m = r.generators();
  if (static_cast<int>(r.mult.size()) != m)
    throw std::invalid_argument("validate_ring: mult table shape mismatch");
  for (const auto& row : r.mult)
    if (static_cast<int>(row.size()) != m) throw std::invalid_argument("validate_ring: mult table shape mismatch");
  for (int i = 1; i < m; ++i)
    if (r.a[i] > r.a[i - 1]) out.violations.push_back("additive invariants not descending");

  // Bilinear well-definedness: p^{a_i} x_i = 0 forces p^{a_i} (x_i x_j) = 0.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::int64_t killer = std::min(r.order_of_coord(i), r.order_of_coord(j));
      GroupElem scaled = r.scale(killer, r.mult[i][j]);
      if (scaled != r.zero())
        out.violations.push_back("bilinear extension ill-defined at x_" + std::to_string(i + 1) + " x_" +
                                 std::to_string(j + 1));
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j)
      if (r.mult[i][j] != r.mult[j][i])
        out.violations.push_back("commutativity fails at x_" + std::to_string(i + 1) + " x_" + std::to_string(j + 1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        GroupElem lhs = r.mul(r.mult[i][j], generator(r, k));
        GroupElem rhs = r.mul(generator(r, i), r.mult[j][k]);
        if (lhs != rhs)
          out.violations.push_back("associativity fails at (x_" + std::to_string(i + 1) + ", x_" +
                                   std::to_string(j + 1) + ", x_" + std::to_string(k + 1) + ")");
      }
  auto is_unit_elem = [&](const GroupElem& e) {
    for (int i = 0; i < m; ++i)
      if (r.mul(e, generator(r, i)) != generator(r, i)) return false;
    return true;
  };
  if (r.one) {
    if (!is_unit_elem(*r.one))
      out.violations.push_back("declared identity " + elem_str(*r.one) + " is not an identity");
    else
      out.unit = r.one;
  } else {
    for (const GroupElem& e : all_elements(r))
      if (is_unit_elem(e)) {
        out.unit = e;
        break;
      }
    if (!out.unit) out.violations.push_back("no multiplicative identity exists");
  }
  return out;
}

FpReduction to_fp_algebra(const FiniteRing& r) {
  RingCheck check = validate_ring(r);
  if (!check.ok()) throw std::invalid_argument("to_fp_algebra: ring invalid: " + check.violations.front());
  const std::int64_t p = r.p;
  const int n = r.rank();
  // Basis z enumerates y_{ij} = p^j x_i, i ascending, j ascending.
  std::vector<std::pair<int, int>> zbasis;
  for (int i = 0; i < r.generators(); ++i)
    for (int j = 0; j < r.a[i]; ++j) zbasis.emplace_back(i, j);
  // Expansion of a group element in the z basis: base-p digits per coordinate.
  auto expand = [&](const GroupElem& e) {
    VecZ v = zvec(n, p);
    int idx = 0;
    for (int i = 0; i < r.generators(); ++i) {
      std::int64_t rem = e[i];
      for (int j = 0; j < r.a[i]; ++j) {
        v(idx++) = Zmod(rem % p, p);
        rem /= p;
      }
    }
    return v;
  };
  StructureTable t(n, p);
  for (int zi = 0; zi < n; ++zi)
    for (int zj = 0; zj < n; ++zj) {
      auto [i, ji] = zbasis[zi];
      auto [k, jk] = zbasis[zj];
      std::int64_t power = 1;
      for (int e = 0; e < ji + jk; ++e) power *= p;
      VecZ row = expand(r.scale(power, r.mult[i][k]));
      t.set_row(zi, zj, row);
    }
  VecZ d = expand(*check.unit);
  for (int i = 0; i < n; ++i) t.d(i) = d(i);
  return {r.a, BasedAlgebra::require(t, "reduced ring table")};
}

namespace {

// Additive automorphisms of prod Z/p^{a_i} as generator-image tuples.
std::vector<std::vector<GroupElem>> additive_automorphisms(const FiniteRing& shape) {
  const int m = shape.generators();
  std::vector<GroupElem> elems = all_elements(shape);
  // Candidate images of x_j: elements killed by p^{a_j}.
  std::vector<std::vector<GroupElem>> candidates(m);
  for (int j = 0; j < m; ++j)
    for (const GroupElem& e : elems)
      if (shape.scale(shape.order_of_coord(j), e) == shape.zero()) candidates[j].push_back(e);
  std::vector<std::vector<GroupElem>> autos;
  std::vector<GroupElem> images(m);
  auto apply = [&](const GroupElem& x) {
    GroupElem y = shape.zero();
    for (int j = 0; j < m; ++j) y = shape.add(y, shape.scale(x[j], images[j]));
    return y;
  };
  std::vector<int> pick(m, 0);
  while (true) {
    for (int j = 0; j < m; ++j) images[j] = candidates[j][pick[j]];
    std::set<GroupElem> seen;
    for (const GroupElem& e : elems) seen.insert(apply(e));
    if (static_cast<std::int64_t>(seen.size()) == static_cast<std::int64_t>(elems.size()))
      autos.push_back(images);
    int j = m - 1;
    while (j >= 0) {
      if (++pick[j] < static_cast<int>(candidates[j].size())) break;
      pick[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return autos;
}

// The table of the same ring presented on generators y_i = sigma(x_i).
FiniteRing transform(const FiniteRing& r, const std::vector<GroupElem>& images,
                     const std::vector<GroupElem>& elems) {
  // Invert sigma by brute force over the group.
  auto apply = [&](const GroupElem& x) {
    GroupElem y = r.zero();
    for (int j = 0; j < r.generators(); ++j) y = r.add(y, r.scale(x[j], images[j]));
    return y;
  };
  auto invert = [&](const GroupElem& y) {
    for (const GroupElem& e : elems)
      if (apply(e) == y) return e;
    throw std::logic_error("transform: automorphism not surjective");
  };
  FiniteRing out = r;
  for (int i = 0; i < r.generators(); ++i)
    for (int j = 0; j < r.generators(); ++j) out.mult[i][j] = invert(r.mul(images[i], images[j]));
  if (r.one) out.one = invert(*r.one);
  return out;
}

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rest, maxpart); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

}  // namespace

std::vector<FiniteRing> enumerate_rings(std::int64_t p, int n, std::int64_t budget) {
  require_prime(p, "enumerate_rings");
  if (n < 1) throw std::invalid_argument("enumerate_rings: n must be >= 1");
  std::vector<FiniteRing> out;
  for (const std::vector<int>& a : partitions_of(n)) {
    FiniteRing shape;
    shape.p = p;
    shape.a = a;
    const int m = shape.generators();
    shape.mult.assign(m, std::vector<GroupElem>(m, shape.zero()));
    std::vector<GroupElem> elems = all_elements(shape);
    auto autos = additive_automorphisms(shape);

    // Candidates for x_i x_j: elements killed by p^{min(a_i, a_j)}.
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) slots.emplace_back(i, j);
    std::vector<std::vector<GroupElem>> candidates(slots.size());
    std::int64_t total = 1;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto [i, j] = slots[s];
      std::int64_t killer = std::min(shape.order_of_coord(i), shape.order_of_coord(j));
      for (const GroupElem& e : elems)
        if (shape.scale(killer, e) == shape.zero()) candidates[s].push_back(e);
      total *= static_cast<std::int64_t>(candidates[s].size());
      if (total > budget) throw budget_error("enumerate_rings: table space exceeds budget");
    }

    std::set<std::string> canon_seen;
    std::vector<int> pick(slots.size(), 0);
    while (true) {
      FiniteRing r = shape;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        auto [i, j] = slots[s];
        r.mult[i][j] = candidates[s][pick[s]];
        r.mult[j][i] = candidates[s][pick[s]];
      }
      RingCheck check = validate_ring(r);
      if (check.ok()) {
        r.one = check.unit;
        // Canonical form: minimal table over the additive automorphism action.
        FiniteRing best = r;
        std::string best_key = table_str(r);
        for (const auto& images : autos) {
          FiniteRing tr = transform(r, images, elems);
          std::string key = table_str(tr);
          if (key < best_key) {
            best_key = key;
            best = tr;
          }
        }
        if (canon_seen.insert(best_key).second) out.push_back(best);
      }
      int s = static_cast<int>(slots.size()) - 1;
      while (s >= 0) {
        if (++pick[s] < static_cast<int>(candidates[s].size())) break;
        pick[s] = 0;
        --s;
      }
      if (s < 0) break;
    }
  }
  return out;
}

BoundCheck bound_check(std::int64_t p, int n, std::int64_t budget) {
  BoundCheck out;
  out.ring_count = static_cast<std::int64_t>(enumerate_rings(p, n, budget).size());
  EnumOptions opts;
  opts.budget = budget;
  out.algebra_classes = static_cast<std::int64_t>(classify(n, p, opts).size());
  std::int64_t factor = 1;
  for (int i = 0; i < n * n + n; ++i) factor *= p;
  out.bound = factor * out.algebra_classes;
  return out;
}

std::string FiniteRing::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  j["a"] = a;
  auto mj = nlohmann::json::array();
  for (const auto& row : mult) {
    auto rj = nlohmann::json::array();
    for (const auto& e : row) rj.push_back(e);
    mj.push_back(rj);
  }
  j["mult"] = mj;
  if (one) j["one"] = *one;
  return j.dump();
}

FiniteRing FiniteRing::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FiniteRing r;
  r.p = j.at("p").get<std::int64_t>();
  r.a = j.at("a").get<std::vector<int>>();
  const int m = r.generators();
  r.mult.assign(m, std::vector<GroupElem>(m, r.zero()));
  const auto& mj = j.at("mult");
  if (static_cast<int>(mj.size()) != m) throw std::invalid_argument("ring json: bad mult shape");
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(mj[i].size()) != m) throw std::invalid_argument("ring json: bad mult shape");
    for (int k = 0; k < m; ++k) {
      GroupElem e = mj[i][k].get<GroupElem>();
      if (static_cast<int>(e.size()) != m) throw std::invalid_argument("ring json: bad element length");
      for (int c = 0; c < m; ++c)
        if (e[c] < 0 || e[c] >= r.order_of_coord(c))
          throw std::invalid_argument("ring json: unreduced coordinate");
      r.mult[i][k] = e;
    }
  }
  if (j.contains("one")) r.one = j.at("one").get<GroupElem>();
  return r;
}

}  // namespace algmod

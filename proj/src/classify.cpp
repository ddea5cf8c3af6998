#include <algmod/classify.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace algmod {

namespace {

struct CellOrder {
  std::vector<std::pair<int, int>> pairs;  // free pairs (i, j), 1 <= i <= j <= n-1
  std::vector<std::vector<int>> schedule;  // depth -> identity indices
  std::vector<std::array<int, 3>> identities;  // (a, b, c) with a < c
};

CellOrder make_order(int n, int seed) {
  CellOrder ord;
  for (int i = 1; i < n; ++i)
    for (int j = i; j < n; ++j) ord.pairs.emplace_back(i, j);
  if (seed != 0) {
    std::mt19937 rng(static_cast<unsigned>(seed));
    std::shuffle(ord.pairs.begin(), ord.pairs.end(), rng);
  }
  std::vector<std::vector<int>> depth_of(n, std::vector<int>(n, -1));
  for (std::size_t d = 0; d < ord.pairs.size(); ++d) {
    auto [i, j] = ord.pairs[d];
    depth_of[i][j] = depth_of[j][i] = static_cast<int>(d);
  }
  auto pair_depth = [&](int x, int y) { return (x == 0 || y == 0) ? -1 : depth_of[x][y]; };
  for (int a = 1; a < n; ++a)
    for (int c = a + 1; c < n; ++c)
      for (int b = 1; b < n; ++b) {
        int depth = std::max(pair_depth(a, b), pair_depth(b, c));
        for (int m = 1; m < n; ++m) {
          depth = std::max(depth, pair_depth(m, c));
          depth = std::max(depth, pair_depth(a, m));
        }
        int id = static_cast<int>(ord.identities.size());
        ord.identities.push_back({a, b, c});
        if (ord.schedule.size() < ord.pairs.size()) ord.schedule.resize(ord.pairs.size());
        if (depth >= 0) ord.schedule[depth].push_back(id);
      }
  if (ord.schedule.size() < ord.pairs.size()) ord.schedule.resize(ord.pairs.size());
  return ord;
}

// (e_a e_b) e_c - e_a (e_b e_c) on a normalized working table; rows with a
// zero index are the forced identity rows.
bool identity_holds(const StructureTable& t, int a, int b, int c) {
  const int n = t.n;
  const std::int64_t q = t.modulus;
  for (int l = 0; l < n; ++l) {
    Zmod s(0, q);
    for (int m = 0; m < n; ++m) {
      Zmod cab = (a == 0) ? Zmod(b == m ? 1 : 0, q) : t.at(std::min(a, b), std::max(a, b), m);
      Zmod cbc = (b == 0) ? Zmod(c == m ? 1 : 0, q) : t.at(std::min(b, c), std::max(b, c), m);
      Zmod cmc = (m == 0) ? Zmod(c == l ? 1 : 0, q) : t.at(std::min(m, c), std::max(m, c), l);
      Zmod cam = (m == 0) ? Zmod(a == l ? 1 : 0, q) : t.at(std::min(a, m), std::max(a, m), l);
      s += cab * cmc - cbc * cam;
    }
    if (!s.is_zero()) return false;
  }
  return true;
}

StructureTable normalized_shell(int n, std::int64_t q) {
  StructureTable t(n, q);
  t.d(0) = Zmod(1, q);
  for (int j = 0; j < n; ++j) {
    t.at(0, j, j) = Zmod(1, q);
    if (j) t.at(j, 0, j) = Zmod(1, q);
  }
  return t;
}

bool table_valid_fast(const StructureTable& t) {
  const int n = t.n;
  const std::int64_t q = t.modulus;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int l = 0; l < n; ++l)
        if (t.at(i, j, l) != t.at(j, i, l)) return false;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      Zmod s(0, q);
      for (int i = 0; i < n; ++i) s += t.d(i) * t.at(i, j, l);
      if (s != Zmod(j == l ? 1 : 0, q)) return false;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Zmod s(0, q);
          for (int m = 0; m < n; ++m) s += t.at(i, j, m) * t.at(m, k, l) - t.at(j, k, m) * t.at(i, m, l);
          if (!s.is_zero()) return false;
        }
  return true;
}

void dfs_rows(const CellOrder& ord, StructureTable& t, std::size_t depth,
              std::vector<StructureTable>& out) {
  if (depth == ord.pairs.size()) {
    out.push_back(t);
    return;
  }
  auto [i, j] = ord.pairs[depth];
  VectorStream vs(t.n, t.modulus);
  while (auto v = vs.next()) {
    t.set_row(i, j, *v);
    t.set_row(j, i, *v);
    bool ok = true;
    for (int id : ord.schedule[depth]) {
      const auto& tri = ord.identities[id];
      if (!identity_holds(t, tri[0], tri[1], tri[2])) {
        ok = false;
        break;
      }
    }
    if (ok) dfs_rows(ord, t, depth + 1, out);
  }
  VecZ zero = zvec(t.n, t.modulus);
  t.set_row(i, j, zero);
  t.set_row(j, i, zero);
}

}  // namespace

std::vector<StructureTable> enumerate_valid(int n, std::int64_t q, const EnumOptions& opts) {
  require_prime(q, "enumerate_valid");
  if (n < 1) throw std::invalid_argument("enumerate_valid: n must be >= 1");
  const int free_pairs = (n - 1) * n / 2;
  const int free_cells_sweep = (n - 1) * (n - 1) * n;

  std::vector<StructureTable> out;
  if (opts.full_sweep) {
    std::int64_t total = 1;
    for (int i = 0; i < free_cells_sweep; ++i) {
      total *= q;
      if (total > opts.budget) throw budget_error("enumerate_valid: full sweep exceeds budget");
    }
    StructureTable t = normalized_shell(n, q);
    // Odometer over all ordered free cells (i, j >= 1).
    std::vector<Zmod*> cells;
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j)
        for (int l = 0; l < n; ++l) cells.push_back(&t.at(i, j, l));
    while (true) {
      if (table_valid_fast(t)) out.push_back(t);
      int k = static_cast<int>(cells.size()) - 1;
      while (k >= 0) {
        if (cells[k]->value() + 1 < q) {
          *cells[k] = Zmod(cells[k]->value() + 1, q);
          break;
        }
        *cells[k] = Zmod(0, q);
        --k;
      }
      if (k < 0) break;
    }
  } else {
    std::int64_t total = 1;
    for (int i = 0; i < n * free_pairs; ++i) {
      total *= q;
      if (total > opts.budget) throw budget_error("enumerate_valid: DFS leaf space exceeds budget");
    }
    CellOrder ord = make_order(n, opts.seed_order);
    StructureTable t = normalized_shell(n, q);
    dfs_rows(ord, t, 0, out);
  }
  for (const StructureTable& t : out)
    if (!BasedAlgebra::validate(t)) throw std::logic_error("enumerate_valid: produced an invalid table");
  return out;
}

std::vector<ClassRecord> classify(int n, std::int64_t q, const EnumOptions& opts) {
  auto tables = enumerate_valid(n, q, opts);
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(tables.size() * 2);
  for (std::size_t i = 0; i < tables.size(); ++i) index[tables[i].key()] = i;

  std::vector<InvertibleMatrix> h;
  for (const MatZ& m : collect_h(n, q, opts.budget)) h.emplace_back(m);
  const std::int64_t order_h = static_cast<std::int64_t>(h.size());
  if (order_h != h_order(n, q)) throw std::logic_error("classify: |H| disagrees with h_order");

  std::vector<bool> seen(tables.size(), false);
  std::vector<ClassRecord> records;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (seen[i]) continue;
    BasedAlgebra rep = BasedAlgebra::require(tables[i], "class seed");
    std::unordered_set<std::string> orbit;
    std::int64_t stabilizer = 0;
    std::string min_key = tables[i].key();
    StructureTable min_table = tables[i];
    for (const InvertibleMatrix& m : h) {
      StructureTable img = act(m, rep).table();
      std::string key = img.key();
      if (key == tables[i].key()) ++stabilizer;
      if (orbit.insert(key).second) {
        auto it = index.find(key);
        if (it == index.end()) throw std::logic_error("classify: orbit left the enumerated set");
        seen[it->second] = true;
        if (key < min_key) {
          min_key = key;
          min_table = img;
        }
      }
    }
    ClassRecord rec;
    rec.representative = min_table;
    rec.orbit_size = static_cast<std::int64_t>(orbit.size());
    rec.aut_order = stabilizer;
    if (rec.aut_order * rec.orbit_size != order_h)
      throw std::logic_error("classify: orbit-stabilizer identity failed");
    rec.sig = invariant_sig(BasedAlgebra::require(min_table, "class representative"), opts.budget);
    records.push_back(std::move(rec));
  }
  std::sort(records.begin(), records.end(),
            [](const ClassRecord& a, const ClassRecord& b) { return a.representative.key() < b.representative.key(); });
  std::int64_t covered = 0;
  for (const auto& r : records) covered += r.orbit_size;
  if (covered != static_cast<std::int64_t>(tables.size()))
    throw std::logic_error("classify: orbit sizes do not sum to the table count");
  return records;
}

std::int64_t partition_count(int n) {
  std::vector<std::int64_t> p(n + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int total = part; total <= n; ++total) p[total] += p[total - part];
  return p[n];
}

CensusSummary census(int n, std::int64_t q, const EnumOptions& opts) {
  CensusSummary s;
  s.n = n;
  s.q = q;
  s.records = classify(n, q, opts);
  s.classes = static_cast<std::int64_t>(s.records.size());
  for (const auto& r : s.records) {
    s.valid_tables += r.orbit_size;
    if (r.sig.delta_nonzero) ++s.etale_classes;
    if (r.sig.idempotent_count == 2) ++s.local_classes;
  }
  s.expected_etale = partition_count(n);
  return s;
}

namespace {

std::string filtration_str(const std::vector<int>& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += '|';
    s += std::to_string(f[i]);
  }
  return s;
}

}  // namespace

std::string classify_csv_header() {
  return "n,q,class_id,aut_order,orbit_size,delta_nonzero,is_local,filtration,idempotents";
}

std::string classify_csv_row(int n, std::int64_t q, std::size_t class_id, const ClassRecord& rec) {
  std::ostringstream os;
  os << n << ',' << q << ',' << class_id << ',' << rec.aut_order << ',' << rec.orbit_size << ','
     << (rec.sig.delta_nonzero ? 1 : 0) << ',' << (rec.sig.idempotent_count == 2 ? 1 : 0) << ','
     << filtration_str(rec.sig.filtration) << ',' << rec.sig.idempotent_count;
  return os.str();
}

std::string census_csv_header() {
  return "n,q,valid_tables,classes,etale_classes,expected_etale,local_classes";
}

std::string census_csv_row(const CensusSummary& s) {
  std::ostringstream os;
  os << s.n << ',' << s.q << ',' << s.valid_tables << ',' << s.classes << ',' << s.etale_classes << ','
     << s.expected_etale << ',' << s.local_classes;
  return os.str();
}

}  // namespace algmod

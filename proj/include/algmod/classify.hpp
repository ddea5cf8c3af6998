// Exhaustive generation of the valid points of B_n^1(F_q) by a
// constraint-propagating DFS (optionally a full unpruned sweep), orbit
// partition under H(F_q), and counting consistency checks.
#pragma once

#include <algmod/action.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace algmod {

struct EnumOptions {
  /// Permutation seed for the DFS cell order; 0 is the documented default
  /// order (pairs (i, j), i <= j, lexicographic). Any seed enumerates the
  /// same set of tables.
  int seed_order = 0;
  /// Iterate all q^((n-1)^2 n) candidate tables instead of the pruned DFS.
  bool full_sweep = false;
  std::int64_t budget = search_budget();
};

/// Every valid normalized table of B_n^1(F_q), each re-verified by validate,
/// in the order produced by the (seeded) DFS.
std::vector<StructureTable> enumerate_valid(int n, std::int64_t q, const EnumOptions& opts = {});

/// An H(F_q)-orbit of valid normalized tables: the orbit-minimal
/// representative (in the fixed table order), the stabilizer order, the orbit
/// size, and the invariant signature of the class.
struct ClassRecord {
  StructureTable representative;
  std::int64_t aut_order = 0;
  std::int64_t orbit_size = 0;
  InvariantSig sig;
};

std::vector<ClassRecord> classify(int n, std::int64_t q, const EnumOptions& opts = {});

/// Number of partitions of n (the count of etale isomorphism classes over a
/// prime field: multisets of residue-field degrees summing to n).
std::int64_t partition_count(int n);

struct CensusSummary {
  int n = 0;
  std::int64_t q = 0;
  std::int64_t valid_tables = 0;
  std::int64_t classes = 0;
  std::int64_t etale_classes = 0;
  std::int64_t expected_etale = 0;  // partition_count(n)
  std::int64_t local_classes = 0;
  std::vector<ClassRecord> records;
};
CensusSummary census(int n, std::int64_t q, const EnumOptions& opts = {});

/// Frozen CSV schemas shared by the CLI and the golden tests.
std::string classify_csv_header();
std::string classify_csv_row(int n, std::int64_t q, std::size_t class_id, const ClassRecord& rec);
std::string census_csv_header();
std::string census_csv_row(const CensusSummary& summary);

}  // namespace algmod

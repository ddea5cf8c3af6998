#include <algmod/linalg.hpp>

#include <algorithm>
#include <cstdlib>

namespace algmod {

std::int64_t search_budget() {
  static const std::int64_t budget = [] {
    if (const char* env = std::getenv("ALGMOD_BUDGET")) {
      char* end = nullptr;
      long long v = std::strtoll(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::int64_t>(v);
    }
    return std::int64_t(1) << 24;
  }();
  return budget;
}

bool is_prime(std::int64_t m) {
  if (m < 2) return false;
  for (std::int64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

void require_prime(std::int64_t m, const char* where) {
  if (!is_prime(m)) throw std::invalid_argument(std::string(where) + ": modulus " + std::to_string(m) + " is not prime");
}

namespace {

std::int64_t modulus_of(const MatZ& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i).typed()) return a(i).modulus();
  throw std::invalid_argument("matrix has no typed entries (unknown modulus)");
}

// In-place RREF on rows [0, rows) of a; returns pivot columns. Prime modulus.
std::vector<Eigen::Index> rref_inplace(MatZ& a, std::int64_t q) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = row; r < a.rows(); ++r)
      if (!a(r, col).is_zero()) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row) a.row(sel).swap(a.row(row));
    Zmod inv = a(row, col).inverse();
    for (Eigen::Index c = 0; c < a.cols(); ++c) a(row, c) *= inv;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      Zmod f = a(r, col);
      for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  (void)q;
  return pivots;
}

}  // namespace

Subspace Subspace::from_span(const MatZ& rows) {
  std::int64_t q = modulus_of(rows);
  require_prime(q, "Subspace::from_span");
  MatZ a = rows;
  std::vector<Eigen::Index> pivots = rref_inplace(a, q);
  Subspace s(rows.cols(), q);
  s.basis_ = zeros(static_cast<Eigen::Index>(pivots.size()), rows.cols(), q);
  for (Eigen::Index r = 0; r < s.basis_.rows(); ++r) s.basis_.row(r) = a.row(r);
  return s;
}

Subspace Subspace::full(Eigen::Index ambient, std::int64_t q) {
  Subspace s(ambient, q);
  s.basis_ = eye(ambient, q);
  return s;
}

VecZ Subspace::reduce(const VecZ& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Subspace::reduce: dimension mismatch");
  VecZ r = v;
  for (Eigen::Index row = 0; row < basis_.rows(); ++row) {
    Eigen::Index p = 0;
    while (p < ambient_ && basis_(row, p).is_zero()) ++p;
    if (p == ambient_) continue;
    Zmod f = r(p);
    if (f.is_zero()) continue;
    for (Eigen::Index c = 0; c < ambient_; ++c) r(c) -= f * basis_(row, c);
  }
  return r;
}

bool Subspace::contains(const VecZ& v) const {
  VecZ r = reduce(v);
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (!r(i).is_zero()) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  for (Eigen::Index r = 0; r < other.basis_.rows(); ++r)
    if (!contains(VecZ(other.basis_.row(r).transpose()))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (ambient_ != other.ambient_ || q_ != other.q_)
    throw std::invalid_argument("Subspace::sum: ambient/modulus mismatch");
  if (basis_.rows() + other.basis_.rows() == 0) return Subspace(ambient_, q_);
  MatZ stacked = zeros(basis_.rows() + other.basis_.rows(), ambient_, q_);
  stacked.topRows(basis_.rows()) = basis_;
  stacked.bottomRows(other.basis_.rows()) = other.basis_;
  return from_span(stacked);
}

bool operator==(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_ || a.q_ != b.q_ || a.dim() != b.dim()) return false;
  for (Eigen::Index i = 0; i < a.basis_.size(); ++i)
    if (a.basis_(i) != b.basis_(i)) return false;
  return true;
}

std::string Subspace::key() const { return mat_key(basis_); }

RreResult rre_form(const MatZ& a) {
  std::int64_t q = modulus_of(a);
  require_prime(q, "rre_form");
  RreResult res{0, a, {}, Subspace(a.cols(), q)};
  res.pivots = rref_inplace(res.echelon, q);
  res.rank = static_cast<Eigen::Index>(res.pivots.size());
  // One kernel vector per free column.
  std::vector<bool> is_pivot(a.cols(), false);
  for (Eigen::Index p : res.pivots) is_pivot[p] = true;
  MatZ ker = zeros(a.cols() - res.rank, a.cols(), q);
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    ker(k, free) = Zmod(1, q);
    for (Eigen::Index r = 0; r < res.rank; ++r) ker(k, res.pivots[r]) = -res.echelon(r, free);
    ++k;
  }
  res.kernel = ker.rows() ? Subspace::from_span(ker) : Subspace(a.cols(), q);
  return res;
}

Eigen::Index rank_of(const MatZ& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  std::int64_t q = modulus_of(a);
  MatZ c = a;
  return static_cast<Eigen::Index>(rref_inplace(c, q).size());
}

AffineSolve solve_affine(const MatZ& a, const VecZ& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_affine: dimension mismatch");
  std::int64_t q = b.size() ? modulus_of(MatZ(b)) : modulus_of(a);
  require_prime(q, "solve_affine");
  // Eliminate on [A | b] while tracking the row transform for certificates.
  Eigen::Index rows = a.rows(), cols = a.cols();
  MatZ work = zeros(rows, cols + 1 + rows, q);
  work.topLeftCorner(rows, cols) = a;
  work.col(cols) = b;
  work.topRightCorner(rows, rows) = eye(rows, q);
  Eigen::Index row = 0;
  std::vector<Eigen::Index> pivots;
  for (Eigen::Index col = 0; col <= cols && row < rows; ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = row; r < rows; ++r)
      if (!work(r, col).is_zero()) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    work.row(sel).swap(work.row(row));
    Zmod inv = work(row, col).inverse();
    for (Eigen::Index c = 0; c < work.cols(); ++c) work(row, c) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || work(r, col).is_zero()) continue;
      Zmod f = work(r, col);
      for (Eigen::Index c = 0; c < work.cols(); ++c) work(r, c) -= f * work(row, c);
    }
    if (col == cols) {
      // Pivot landed in the b column: infeasible, row transform is the certificate.
      AffineSolve out;
      out.certificate = VecZ(work.row(row).tail(rows).transpose());
      return out;
    }
    pivots.push_back(col);
    ++row;
  }
  AffineSolve out;
  VecZ x = zvec(cols, q);
  for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(pivots.size()); ++r) x(pivots[r]) = work(r, cols);
  out.solution = x;
  return out;
}

Zmod det(const MatZ& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det: matrix not square");
  std::int64_t q = a.size() ? modulus_of(a) : 2;
  if (a.rows() == 0) return Zmod(1, q);
  require_prime(q, "det");
  MatZ w = a;
  Zmod d(1, q);
  Eigen::Index n = w.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (!w(r, col).is_zero()) {
        sel = r;
        break;
      }
    if (sel < 0) return Zmod(0, q);
    if (sel != col) {
      w.row(sel).swap(w.row(col));
      d = -d;
    }
    d *= w(col, col);
    Zmod inv = w(col, col).inverse();
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (w(r, col).is_zero()) continue;
      Zmod f = w(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) w(r, c) -= f * w(col, c);
    }
  }
  return d;
}

std::optional<MatZ> try_inverse(const MatZ& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
  std::int64_t q = a.size() ? modulus_of(a) : 2;
  if (a.rows() == 0) return zeros(0, 0, q);
  require_prime(q, "inverse");
  Eigen::Index n = a.rows();
  MatZ w = zeros(n, 2 * n, q);
  w.leftCols(n) = a;
  w.rightCols(n) = eye(n, q);
  if (rref_inplace(w, q).size() != static_cast<std::size_t>(n)) return std::nullopt;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (w(i, j) != (i == j ? Zmod(1, q) : Zmod(0, q))) return std::nullopt;
  return MatZ(w.rightCols(n));
}

MatZ inverse(const MatZ& a) {
  auto inv = try_inverse(a);
  if (!inv) throw std::invalid_argument("inverse: matrix is singular");
  return *inv;
}

std::int64_t gl_order(int n, std::int64_t q) {
  if (n < 0) throw std::invalid_argument("gl_order: n must be >= 0");
  std::int64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  std::int64_t order = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= qn - qi;
    qi *= q;
  }
  return order;
}

std::int64_t h_order(int n, std::int64_t q) {
  if (n < 1) return 1;
  std::int64_t shift = 1;
  for (int i = 0; i + 1 < n; ++i) shift *= q;
  return shift * gl_order(n - 1, q);
}

MatrixStream::MatrixStream(Eigen::Index rows, Eigen::Index cols, std::int64_t q)
    : rows_(rows), cols_(cols), q_(q), cur_(zeros(rows, cols, q)), frozen_(rows * cols, false) {}

void MatrixStream::freeze(Eigen::Index r, Eigen::Index c, Zmod value) {
  frozen_[c * rows_ + r] = true;
  cur_(r, c) = value;
}

std::int64_t MatrixStream::combinations() const {
  std::int64_t total = 1;
  for (bool f : frozen_)
    if (!f) {
      if (total > (std::int64_t(1) << 62) / q_) return std::int64_t(1) << 62;
      total *= q_;
    }
  return total;
}

std::optional<MatZ> MatrixStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return cur_;
  }
  // Column-major odometer, least-significant cell last.
  for (Eigen::Index idx = rows_ * cols_ - 1; idx >= 0; --idx) {
    if (frozen_[idx]) continue;
    Eigen::Index c = idx / rows_, r = idx % rows_;
    if (cur_(r, c).value() + 1 < q_) {
      cur_(r, c) = Zmod(cur_(r, c).value() + 1, q_);
      return cur_;
    }
    cur_(r, c) = Zmod(0, q_);
  }
  done_ = true;
  return std::nullopt;
}

void MatrixStream::reset() {
  started_ = done_ = false;
  for (Eigen::Index c = 0; c < cols_; ++c)
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (!frozen_[c * rows_ + r]) cur_(r, c) = Zmod(0, q_);
}

GlStream::GlStream(int n, std::int64_t q, std::int64_t budget) : inner_(n, n, q) {
  if (inner_.combinations() > budget)
    throw budget_error("iterate_gl(" + std::to_string(n) + "," + std::to_string(q) +
                       "): q^(n^2) exceeds budget " + std::to_string(budget));
}

std::optional<MatZ> GlStream::next() {
  while (auto m = inner_.next()) {
    if (!det(*m).is_zero()) return m;
  }
  return std::nullopt;
}

HStream::HStream(int n, std::int64_t q, std::int64_t budget) : inner_(n, n, q) {
  if (n < 1) throw std::invalid_argument("iterate_h: n must be >= 1");
  for (Eigen::Index r = 0; r < n; ++r) inner_.freeze(r, 0, Zmod(r == 0 ? 1 : 0, q));
  if (inner_.combinations() > budget)
    throw budget_error("iterate_h(" + std::to_string(n) + "," + std::to_string(q) +
                       "): q^(n(n-1)) exceeds budget " + std::to_string(budget));
}

std::optional<MatZ> HStream::next() {
  while (auto m = inner_.next()) {
    if (!det(*m).is_zero()) return m;
  }
  return std::nullopt;
}

std::vector<MatZ> collect_gl(int n, std::int64_t q, std::int64_t budget) {
  GlStream s(n, q, budget);
  std::vector<MatZ> out;
  while (auto m = s.next()) out.push_back(*m);
  return out;
}

std::vector<MatZ> collect_h(int n, std::int64_t q, std::int64_t budget) {
  HStream s(n, q, budget);
  std::vector<MatZ> out;
  while (auto m = s.next()) out.push_back(*m);
  return out;
}

std::optional<VecZ> VectorStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return cur_;
  }
  for (Eigen::Index i = cur_.size() - 1; i >= 0; --i) {
    if (cur_(i).value() + 1 < q_) {
      cur_(i) = Zmod(cur_(i).value() + 1, q_);
      return cur_;
    }
    cur_(i) = Zmod(0, q_);
  }
  done_ = true;
  return std::nullopt;
}

std::vector<Subspace> subspaces_of_dim(Eigen::Index ambient, Eigen::Index dim, std::int64_t q,
                                       std::int64_t budget) {
  require_prime(q, "subspaces_of_dim");
  if (dim < 0 || dim > ambient) return {};
  if (dim == 0) return {Subspace(ambient, q)};
  // Enumerate echelon bases: pivot-column combinations, then odometer over the
  // unconstrained entries.
  std::vector<Subspace> out;
  std::vector<Eigen::Index> piv(dim);
  for (Eigen::Index i = 0; i < dim; ++i) piv[i] = i;
  std::int64_t produced = 0;
  while (true) {
    // Free cells: (r, c) with c > piv[r], c not a pivot column of a later row.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> free_cells;
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = piv[r] + 1; c < ambient; ++c) {
        bool pivot_col = false;
        for (Eigen::Index r2 = 0; r2 < dim; ++r2)
          if (piv[r2] == c) pivot_col = true;
        if (!pivot_col) free_cells.emplace_back(r, c);
      }
    VectorStream vals(static_cast<Eigen::Index>(free_cells.size()), q);
    while (auto v = vals.next()) {
      if (++produced > budget) throw budget_error("subspace iteration exceeds budget");
      MatZ basis = zeros(dim, ambient, q);
      for (Eigen::Index r = 0; r < dim; ++r) basis(r, piv[r]) = Zmod(1, q);
      for (std::size_t k = 0; k < free_cells.size(); ++k)
        basis(free_cells[k].first, free_cells[k].second) = (*v)(static_cast<Eigen::Index>(k));
      Subspace s = Subspace::from_span(basis);
      if (s.dim() != dim) throw std::logic_error("subspace enumeration produced a degenerate basis");
      out.push_back(s);
    }
    // next pivot combination (lexicographic)
    Eigen::Index i = dim - 1;
    while (i >= 0 && piv[i] == ambient - dim + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (Eigen::Index j = i + 1; j < dim; ++j) piv[j] = piv[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(),
            [](const Subspace& a, const Subspace& b) { return a.key() < b.key(); });
  return out;
}

std::vector<Subspace> all_subspaces(Eigen::Index ambient, std::int64_t q, std::int64_t budget) {
  std::vector<Subspace> out;
  for (Eigen::Index d = 0; d <= ambient; ++d) {
    auto layer = subspaces_of_dim(ambient, d, q, budget);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::string mat_key(const MatZ& a) {
  std::string s;
  s.reserve(a.size() + 16);
  s += std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ":";
  for (Eigen::Index i = 0; i < a.size(); ++i) s += static_cast<char>('0' + a(i).value());
  return s;
}

}  // namespace algmod

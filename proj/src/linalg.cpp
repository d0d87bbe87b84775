#include "stlc/linalg.hpp"

#include <algorithm>

#include "stlc/errors.hpp"

namespace stlc::fields {

bool vec_is_zero(const RatVec& v) {
  for (const Rat& x : v)
    if (!is_zero(x)) return false;
  return true;
}

RatVec vec_scale(const RatVec& v, const Rat& c) {
  RatVec r = v;
  for (Rat& x : r) x *= c;
  return r;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DimensionError("vector size mismatch");
  RatVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DimensionError("vector size mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalSubspace::RationalSubspace(int ambient_dim) : dim_(ambient_dim) {
  if (ambient_dim < 0) throw DimensionError("negative ambient dimension");
}

RatVec RationalSubspace::reduce(const RatVec& v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw DimensionError("vector/subspace dimension mismatch");
  RatVec r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rat& c = r[pivots_[i]];
    if (is_zero(c)) continue;
    Rat f = c;
    for (int j = 0; j < dim_; ++j) r[j] -= f * rows_[i][j];
  }
  return r;
}

bool RationalSubspace::insert(const RatVec& v) {
  RatVec r = reduce(v);
  int pivot = -1;
  for (int j = 0; j < dim_; ++j) {
    if (!is_zero(r[j])) {
      pivot = j;
      break;
    }
  }
  if (pivot < 0) return false;
  Rat inv = Rat(1) / r[pivot];
  for (Rat& x : r) x *= inv;
  // Eliminate the new pivot from existing rows, then insert sorted by pivot.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Rat c = rows_[i][pivot];
    if (is_zero(c)) continue;
    for (int j = 0; j < dim_; ++j) rows_[i][j] -= c * r[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  std::size_t idx = pos - pivots_.begin();
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + idx, std::move(r));
  return true;
}

bool RationalSubspace::contains(const RatVec& v) const {
  return vec_is_zero(reduce(v));
}

bool RationalSubspace::operator==(const RationalSubspace& o) const {
  return dim_ == o.dim_ && pivots_ == o.pivots_ && rows_ == o.rows_;
}

RatVec RationalSubspace::quotient_image(const RatVec& v) const {
  RatVec r = reduce(v);
  RatVec out;
  for (int j : non_pivot_columns()) out.push_back(r[j]);
  return out;
}

std::vector<int> RationalSubspace::non_pivot_columns() const {
  std::vector<int> cols;
  std::size_t pi = 0;
  for (int j = 0; j < dim_; ++j) {
    if (pi < pivots_.size() && pivots_[pi] == j) {
      ++pi;
      continue;
    }
    cols.push_back(j);
  }
  return cols;
}

std::optional<RatVec> solve_linear(const std::vector<RatVec>& a,
                                   const RatVec& b) {
  if (a.size() != b.size()) throw DimensionError("solve: row count mismatch");
  if (a.empty()) return RatVec{};
  const int n = static_cast<int>(a[0].size());
  std::vector<RatVec> aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    if (static_cast<int>(aug[i].size()) != n)
      throw DimensionError("solve: ragged matrix");
    aug[i].push_back(b[i]);
  }
  const int rows = static_cast<int>(aug.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(aug[i][c])) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(aug[sel], aug[r]);
    Rat inv = Rat(1) / aug[r][c];
    for (int j = c; j <= n; ++j) aug[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(aug[i][c])) continue;
      Rat f = aug[i][c];
      for (int j = c; j <= n; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (!is_zero(aug[i][n])) return std::nullopt;
  RatVec x(n, Rat(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = aug[i][n];
  return x;
}

std::optional<RatVec> solve_inequalities(const std::vector<RatVec>& a,
                                         const RatVec& b) {
  if (a.size() != b.size())
    throw DimensionError("inequalities: row count mismatch");
  if (a.empty()) return RatVec{};
  const int n = static_cast<int>(a[0].size());

  // rows[i] = (coeffs, bound) meaning coeffs . x <= bound.
  using Row = std::pair<RatVec, Rat>;
  std::vector<std::vector<Row>> stages;  // system before eliminating var v
  std::vector<Row> current;
  for (std::size_t i = 0; i < a.size(); ++i) current.push_back({a[i], b[i]});

  for (int v = n - 1; v >= 0; --v) {
    stages.push_back(current);
    std::vector<Row> next;
    std::vector<Row> lower, upper;  // lower: x_v >= ..., upper: x_v <= ...
    for (const Row& row : current) {
      const Rat& c = row.first[v];
      if (is_zero(c))
        next.push_back(row);
      else if (sgn(c) > 0)
        upper.push_back(row);
      else
        lower.push_back(row);
    }
    for (const Row& lo : lower) {
      for (const Row& up : upper) {
        // Combine with positive multipliers to cancel x_v.
        Rat ml = up.first[v], mu = -lo.first[v];
        Row combined{RatVec(n, Rat(0)), lo.second * ml + up.second * mu};
        for (int j = 0; j < n; ++j)
          combined.first[j] = lo.first[j] * ml + up.first[j] * mu;
        next.push_back(std::move(combined));
      }
    }
    current = std::move(next);
  }
  for (const Row& row : current)
    if (sgn(row.second) < 0) return std::nullopt;

  // Back-substitute, picking a value inside [max lower, min upper].
  RatVec x(n, Rat(0));
  for (int v = 0; v < n; ++v) {
    const std::vector<Row>& sys = stages[n - 1 - v];
    bool has_lo = false, has_up = false;
    Rat lo(0), up(0);
    for (const Row& row : sys) {
      const Rat& c = row.first[v];
      if (is_zero(c)) continue;
      Rat bound = row.second;
      for (int j = 0; j < n; ++j)
        if (j != v) bound -= row.first[j] * x[j];
      bound /= c;
      if (sgn(row.first[v]) > 0) {
        if (!has_up || bound < up) up = bound;
        has_up = true;
      } else {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      }
    }
    if (has_lo && has_up)
      x[v] = (lo + up) / 2;
    else if (has_lo)
      x[v] = lo;
    else if (has_up)
      x[v] = up;
  }
  return x;
}

}  // namespace stlc::fields

#ifndef STLC_LINALG_HPP
#define STLC_LINALG_HPP

#include <optional>
#include <vector>

#include "stlc/rational.hpp"

namespace stlc::fields {

using RatVec = std::vector<Rat>;

bool vec_is_zero(const RatVec& v);
RatVec vec_scale(const RatVec& v, const Rat& c);
RatVec vec_add(const RatVec& a, const RatVec& b);
Rat dot(const RatVec& a, const RatVec& b);

// A subspace of Q^d kept in reduced row-echelon form; the RREF is canonical
// for the row space, so equality and membership tests are exact and
// insertion-order independent.
class RationalSubspace {
 public:
  explicit RationalSubspace(int ambient_dim);

  int ambient_dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<RatVec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // Returns true if the vector enlarged the span.
  bool insert(const RatVec& v);
  bool contains(const RatVec& v) const;
  bool operator==(const RationalSubspace& o) const;

  // v minus its projection onto the pivot coordinates: the canonical
  // representative of v + N. Zero iff v is in the subspace.
  RatVec reduce(const RatVec& v) const;

  // Coordinates of v in the fixed complement (the non-pivot coordinates of
  // the reduced vector).
  RatVec quotient_image(const RatVec& v) const;
  std::vector<int> non_pivot_columns() const;

 private:
  int dim_;
  std::vector<RatVec> rows_;   // reduced echelon, pivot entries are 1
  std::vector<int> pivots_;
};

// Any exact solution of A x = b, or nullopt when the system is inconsistent.
// A is a list of rows.
std::optional<RatVec> solve_linear(const std::vector<RatVec>& a,
                                   const RatVec& b);

// A feasible point of A x <= b by Fourier-Motzkin elimination, or nullopt.
// Row counts stay tiny in this project, so the quadratic blowup is fine.
std::optional<RatVec> solve_inequalities(const std::vector<RatVec>& a,
                                         const RatVec& b);

}  // namespace stlc::fields

#endif

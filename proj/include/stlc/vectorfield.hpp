#ifndef STLC_VECTORFIELD_HPP
#define STLC_VECTORFIELD_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stlc/hall.hpp"
#include "stlc/linalg.hpp"
#include "stlc/polynomial.hpp"

namespace stlc::fields {

// Polynomial vector field on Q^d: one polynomial per coordinate.
class PolyVectorField {
 public:
  explicit PolyVectorField(int dim);
  PolyVectorField(int dim, std::vector<Poly> components);

  static PolyVectorField zero(int dim) { return PolyVectorField(dim); }
  static PolyVectorField basis_vector(int dim, int index);  // e_index, 1-based

  int dim() const { return dim_; }
  const Poly& component(int i) const { return comps_[i]; }  // 0-based
  Poly& component(int i) { return comps_[i]; }
  bool is_zero() const;

  PolyVectorField operator+(const PolyVectorField& o) const;
  PolyVectorField operator*(const Rat& c) const;
  bool operator==(const PolyVectorField& o) const;

  RatVec eval(const std::vector<Rat>& x) const;
  RatVec at_zero() const;

 private:
  int dim_;
  std::vector<Poly> comps_;
};

// [f, g] = Dg . f - Df . g, exact.
PolyVectorField vf_bracket(const PolyVectorField& f, const PolyVectorField& g);

// The control-affine data x' = f0 + u f1 + v f2 with f0(0) = 0.
class PolySystem {
 public:
  PolySystem(PolyVectorField f0, PolyVectorField f1, PolyVectorField f2);

  int dim() const { return f0_.dim(); }
  const PolyVectorField& f0() const { return f0_; }
  const PolyVectorField& f1() const { return f1_; }
  const PolyVectorField& f2() const { return f2_; }
  const PolyVectorField& field(freelie::Gen g) const;

 private:
  PolyVectorField f0_, f1_, f2_;
};

struct SpanResult {
  RationalSubspace span;
  bool truncated;
  std::optional<int> horizon;
};

// Evaluation of Lie elements through the unique homomorphism sending the
// indeterminates to the system fields. Bracket evaluations are memoized per
// evaluator.
class LieEvaluator {
 public:
  LieEvaluator(PolySystem system, const freelie::HallBasis& basis);

  const PolySystem& system() const { return system_; }
  const freelie::HallBasis& basis() const { return basis_; }

  // f_b for a formal bracket, by direct recursion on the tree.
  PolyVectorField evaluate_bracket(freelie::Bracket b);
  // f_a for a normalized element (linear combination of members).
  PolyVectorField evaluate(const freelie::LieElement& a);
  PolyVectorField evaluate(freelie::Bracket b) {
    return evaluate(basis_.normalize(b));
  }

  RatVec at_zero(const freelie::LieElement& a);
  RatVec at_zero(freelie::Bracket b);

  // Smallest L <= length_cap with every evaluated length-L member field
  // identically zero; all longer brackets then vanish too.
  std::optional<int> nilpotency_horizon(int length_cap);

  // Span of f_b(0) over obstruction-set members up to the nilpotency
  // horizon when detectable, else up to length_cap with truncated = true.
  SpanResult obstruction_span(const freelie::ObstructionParams& params,
                              int length_cap);

 private:
  PolySystem system_;
  const freelie::HallBasis& basis_;
  std::map<freelie::Bracket, PolyVectorField> cache_;
};

}  // namespace stlc::fields

#endif

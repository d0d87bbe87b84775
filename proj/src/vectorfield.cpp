#include "stlc/vectorfield.hpp"

#include "stlc/errors.hpp"

namespace stlc::fields {

using freelie::Bracket;
using freelie::Gen;

PolyVectorField::PolyVectorField(int dim)
    : dim_(dim), comps_(dim, Poly(dim)) {
  if (dim < 1) throw DimensionError("vector field needs dim >= 1");
}

PolyVectorField::PolyVectorField(int dim, std::vector<Poly> components)
    : dim_(dim), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != dim_)
    throw DimensionError("component count != dimension");
  for (const Poly& p : comps_)
    if (p.dim() != dim_) throw DimensionError("component dimension mismatch");
}

PolyVectorField PolyVectorField::basis_vector(int dim, int index) {
  PolyVectorField f(dim);
  if (index < 1 || index > dim) throw DimensionError("basis index out of range");
  f.comps_[index - 1] = Poly::constant(dim, Rat(1));
  return f;
}

bool PolyVectorField::is_zero() const {
  for (const Poly& p : comps_)
    if (!p.is_zero()) return false;
  return true;
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& o) const {
  if (dim_ != o.dim_) throw DimensionError("vector field dimension mismatch");
  PolyVectorField r(dim_);
  for (int i = 0; i < dim_; ++i) r.comps_[i] = comps_[i] + o.comps_[i];
  return r;
}

PolyVectorField PolyVectorField::operator*(const Rat& c) const {
  PolyVectorField r(dim_);
  for (int i = 0; i < dim_; ++i) r.comps_[i] = comps_[i] * c;
  return r;
}

bool PolyVectorField::operator==(const PolyVectorField& o) const {
  return dim_ == o.dim_ && comps_ == o.comps_;
}

RatVec PolyVectorField::eval(const std::vector<Rat>& x) const {
  RatVec r;
  r.reserve(dim_);
  for (const Poly& p : comps_) r.push_back(p.eval(x));
  return r;
}

RatVec PolyVectorField::at_zero() const {
  RatVec r;
  r.reserve(dim_);
  for (const Poly& p : comps_) r.push_back(p.at_zero());
  return r;
}

PolyVectorField vf_bracket(const PolyVectorField& f,
                           const PolyVectorField& g) {
  if (f.dim() != g.dim())
    throw DimensionError("bracket of fields with different dimensions");
  const int d = f.dim();
  PolyVectorField r(d);
  for (int i = 0; i < d; ++i) {
    Poly acc(d);
    for (int j = 1; j <= d; ++j) {
      acc = acc + g.component(i).derivative(j) * f.component(j - 1);
      acc = acc - f.component(i).derivative(j) * g.component(j - 1);
    }
    r.component(i) = acc;
  }
  return r;
}

PolySystem::PolySystem(PolyVectorField f0, PolyVectorField f1,
                       PolyVectorField f2)
    : f0_(std::move(f0)), f1_(std::move(f1)), f2_(std::move(f2)) {
  if (f0_.dim() != f1_.dim() || f0_.dim() != f2_.dim())
    throw DimensionError("system fields have different dimensions");
  if (!vec_is_zero(f0_.at_zero()))
    throw InvalidParamsError("f0(0) must vanish");
}

const PolyVectorField& PolySystem::field(Gen g) const {
  switch (g) {
    case Gen::X0: return f0_;
    case Gen::X1: return f1_;
    case Gen::X2: return f2_;
  }
  throw InvalidParamsError("unknown generator");
}

LieEvaluator::LieEvaluator(PolySystem system, const freelie::HallBasis& basis)
    : system_(std::move(system)), basis_(basis) {}

PolyVectorField LieEvaluator::evaluate_bracket(Bracket b) {
  if (b->is_generator()) return system_.field(b->gen);
  auto it = cache_.find(b);
  if (it != cache_.end()) return it->second;
  PolyVectorField r =
      vf_bracket(evaluate_bracket(b->left), evaluate_bracket(b->right));
  cache_.emplace(b, r);
  return r;
}

PolyVectorField LieEvaluator::evaluate(const freelie::LieElement& a) {
  PolyVectorField acc(system_.dim());
  for (const auto& [rank, coef] : a.terms())
    acc = acc + evaluate_bracket(basis_.member(rank)) * coef;
  return acc;
}

RatVec LieEvaluator::at_zero(const freelie::LieElement& a) {
  RatVec acc(system_.dim(), Rat(0));
  for (const auto& [rank, coef] : a.terms())
    acc = vec_add(acc,
                  vec_scale(evaluate_bracket(basis_.member(rank)).at_zero(),
                            coef));
  return acc;
}

RatVec LieEvaluator::at_zero(Bracket b) {
  return evaluate_bracket(b).at_zero();
}

std::optional<int> LieEvaluator::nilpotency_horizon(int length_cap) {
  if (length_cap < 2) throw InvalidParamsError("horizon needs length_cap >= 2");
  length_cap = std::min(length_cap, basis_.max_length());
  // Members of a given length span the whole graded layer, so once every
  // member field of some length vanishes identically, so do all longer
  // brackets.
  for (int len = 2; len <= length_cap; ++len) {
    bool all_zero = true;
    for (Bracket b : basis_.members_of_length(len)) {
      if (!evaluate_bracket(b).is_zero()) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) return len;
  }
  return std::nullopt;
}

SpanResult LieEvaluator::obstruction_span(
    const freelie::ObstructionParams& params, int length_cap) {
  if (length_cap < 1) throw InvalidParamsError("length_cap must be >= 1");
  length_cap = std::min(length_cap, basis_.max_length());
  auto horizon = nilpotency_horizon(std::max(length_cap, 2));
  int effective = length_cap;
  bool truncated = true;
  if (horizon && *horizon - 1 <= length_cap) {
    effective = *horizon - 1;
    truncated = false;
  }
  RationalSubspace span(system_.dim());
  for (Bracket b : basis_.members()) {
    if (b->length > effective) continue;
    if (!basis_.in_obstruction_set(b, params)) continue;
    RatVec v = at_zero(b);
    if (!vec_is_zero(v)) span.insert(v);
  }
  return {std::move(span), truncated, horizon};
}

}  // namespace stlc::fields

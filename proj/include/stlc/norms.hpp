#ifndef STLC_NORMS_HPP
#define STLC_NORMS_HPP

#include <optional>
#include <vector>

#include "stlc/piecewise.hpp"

namespace stlc::signals {

// Closed rational interval; the enclosure currency of the norm machinery.
struct Interval {
  Rat lo, hi;

  Interval() : lo(0), hi(0) {}
  Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
  explicit Interval(const Rat& x) : lo(x), hi(x) {}

  bool exact() const { return lo == hi; }
  Rat width() const { return hi - lo; }
  double mid() const { return to_double((lo + hi) / 2); }

  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
  Interval operator*(const Rat& c) const {
    return sgn(c) >= 0 ? Interval{lo * c, hi * c} : Interval{hi * c, lo * c};
  }
};

// Interval product/quotient/power for nonnegative intervals (norms only).
Interval nn_mul(const Interval& a, const Interval& b);
Interval nn_div(const Interval& a, const Interval& b);
Interval nn_pow(const Interval& a, unsigned e);

struct NormResult {
  Interval value;
  bool exact;
};

// Distinct real roots of p in (a, b), counted by Sturm chains.
int count_roots_in(const Poly1& p, const Rat& a, const Rat& b);
// All rational roots of p (no multiplicity), sorted.
std::vector<Rat> rational_roots(const Poly1& p);

// Exact when every interior sign change happens at a rational point; a
// certified enclosure of the stated relative accuracy otherwise.
NormResult l1_norm(const PiecewisePoly& u, const Rat& rel_tol = rat(1, 1000000000));

// Integral of u^2 is always an exact rational.
Rat l2_norm_squared(const PiecewisePoly& u);
NormResult l2_norm(const PiecewisePoly& u);  // sqrt enclosure

NormResult linf_norm(const PiecewisePoly& u, const Rat& rel_tol = rat(1, 1000000000));

// General exponents: adaptive numeric quadrature, relative tolerance 1e-12,
// never exact.
double lp_norm(const PiecewisePoly& u, double p);

enum class PExp { One, Two, Inf };

// ||u|| + ||u'|| + ... + ||u^(m)|| with junction continuity required up to
// order m-1; throws InvalidParamsError when the junctions are too rough.
NormResult wmp_norm(const PiecewisePoly& u, int m, PExp p);

// Certified square-root enclosure with hi - lo <= hi * rel_tol.
Interval sqrt_enclosure(const Rat& x, const Rat& rel_tol = rat(1, 1000000000000L));

}  // namespace stlc::signals

#endif

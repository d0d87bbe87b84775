#ifndef STLC_XI_HPP
#define STLC_XI_HPP

#include <functional>
#include <map>
#include <vector>

#include "stlc/hall.hpp"
#include "stlc/piecewise.hpp"

namespace stlc::signals {

// Second-kind coordinates of a fixed control pair over a Hall basis. Each
// xi_b is cached as an exact piecewise polynomial of time so derivatives in
// the recursion stay exact. Single writer; use one session per thread.
class XiSession {
 public:
  XiSession(const freelie::HallBasis& basis, ControlPair controls);

  const freelie::HallBasis& basis() const { return basis_; }
  const ControlPair& controls() const { return controls_; }

  const PiecewisePoly& xi_function(freelie::Bracket b);
  Rat xi(freelie::Bracket b, const Rat& t);
  Rat xi(const freelie::LieElement& a, const Rat& t);

  // Direct closed forms for the named families; must agree with xi.
  Rat xi_closed_form(const freelie::FamilyId& id, const Rat& t);

  // Integration-by-parts split of xi_{C_{j,l}}(t): boundary terms (indexed
  // by mu = 0..depth) plus an integral remainder, summing to the exact
  // value. depth = -1 keeps everything in the integral.
  struct IppSplit {
    std::vector<Rat> boundary_terms;
    Rat remainder;
    Rat total() const {
      Rat s = remainder;
      for (const Rat& b : boundary_terms) s += b;
      return s;
    }
  };
  IppSplit xi_ipp(int j, int l, int depth, const Rat& t);

 private:
  const freelie::HallBasis& basis_;
  ControlPair controls_;
  std::map<freelie::Bracket, PiecewisePoly> cache_;
};

// Weighted primitive: int_0^t (t - s)^l / l! g(s) ds for fixed rational t.
Rat kernel_integral(const PiecewisePoly& g, int l, const Rat& t);

struct ScalingPoint {
  Rat t;
  Rat value;
};

struct ScalingReport {
  double fitted_exponent = 0;
  double fitted_log_constant = 0;
  std::vector<ScalingPoint> points;
};

// Fits log |xi_b(t)| ~ exponent * log t + const over a sweep of horizons.
// The family generator produces the controls for each horizon.
ScalingReport scaling_probe(
    const freelie::HallBasis& basis, freelie::Bracket b,
    const std::function<ControlPair(const Rat&)>& family,
    const std::vector<Rat>& sweep);

}  // namespace stlc::signals

#endif

#ifndef STLC_INTEGRATE_HPP
#define STLC_INTEGRATE_HPP

#include <stdexcept>
#include <vector>

#include "stlc/piecewise.hpp"
#include "stlc/vectorfield.hpp"

namespace stlc::sim {

struct StepUnderflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegratorStats {
  long steps = 0;
  long rejected = 0;
  double max_error_estimate = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  IntegratorStats stats;

  const std::vector<double>& final_state() const { return states.back(); }
};

// Adaptive Dormand-Prince 5(4) for x' = f0(x) + u f1(x) + v f2(x), x(0) = 0.
// Control breakpoints are forced step boundaries, so the right-hand side is
// smooth inside every step. Local error is controlled per unit step at
// rel_tol, which must lie in (1e-14, 1e-3).
Trajectory integrate(const fields::PolySystem& system,
                     const signals::ControlPair& controls, double t_end,
                     double rel_tol, bool store_path = false);

}  // namespace stlc::sim

#endif

#ifndef STLC_PROBES_HPP
#define STLC_PROBES_HPP

#include <functional>
#include <string>
#include <vector>

#include "stlc/integrate.hpp"
#include "stlc/norms.hpp"
#include "stlc/oracle.hpp"

namespace stlc::sim {

struct DriftSweepPoint {
  Rat t;
  Rat amplitude;
  double witness_dot_x;   // P . x(t)
  Rat delta;              // int_0^t (u_k^2 + v_{k'}^2), exact
  double x_norm_beta;     // |x(t)|^beta
  double ratio;           // (P . x + |x|^beta) / delta
};

struct DriftProbeReport {
  std::string family_id;
  double beta;
  std::vector<DriftSweepPoint> points;
  double fitted_constant;  // min ratio over the sweep
  bool consistent;         // fitted_constant > 0
};

// Empirical lower-bound probe for a drift certificate: integrates the
// system over a (t, amplitude) sweep and reports the worst observed ratio.
DriftProbeReport drift_probe(
    const fields::PolySystem& system, const fields::RatVec& witness, int k,
    int k_prime, int pi,
    const std::function<signals::ControlPair(const Rat&, const Rat&)>& family,
    const std::vector<Rat>& times, const std::vector<Rat>& amplitudes,
    double rel_tol, std::string family_id);

struct MagnusProbePoint {
  double control_l1;
  double residual;
};

struct MagnusProbeReport {
  int truncation;
  std::vector<MagnusProbePoint> points;
  double fitted_order;    // slope of log residual against log control size
  bool at_solver_floor;   // residuals within integrator noise everywhere
};

// Compares the integrator with the truncated coordinate expansion over a
// family of scaled controls.
MagnusProbeReport magnus_truncation_probe(const CorpusEntry& entry,
                                          const Rat& alpha,
                                          const signals::ControlPair& controls,
                                          const Rat& t, int truncation,
                                          double rel_tol,
                                          const std::vector<Rat>& scales,
                                          const freelie::HallBasis& basis);

struct GnProbePoint {
  Rat t;
  signals::Interval ratio;
};

struct GnProbeReport {
  int k, m;
  std::vector<GnProbePoint> points;  // ascending in t
  double max_over_min;
  bool monotone_growth;  // strictly increasing with t
  bool bounded;          // max/min < 10 and no growth trend
};

// Ratio ||u||_1^{pi+1} / (t^{pi-2k} ||u||_{W^{m,p}}^{pi-1} ||u_k||_2^2) over
// a sweep of horizons, through certified interval arithmetic.
GnProbeReport gn_probe(
    const std::function<signals::PiecewisePoly(const Rat&)>& family, int k,
    int m, signals::PExp p, const std::vector<Rat>& sweep);

}  // namespace stlc::sim

#endif

#include "stlc/probes.hpp"

#include <algorithm>
#include <cmath>

#include "stlc/errors.hpp"

namespace stlc::sim {

using signals::ControlPair;
using signals::Interval;
using signals::PiecewisePoly;

DriftProbeReport drift_probe(
    const fields::PolySystem& system, const fields::RatVec& witness, int k,
    int k_prime, int pi,
    const std::function<ControlPair(const Rat&, const Rat&)>& family,
    const std::vector<Rat>& times, const std::vector<Rat>& amplitudes,
    double rel_tol, std::string family_id) {
  if (times.empty() || amplitudes.empty())
    throw InvalidParamsError("drift probe needs a non-empty sweep");
  if (static_cast<int>(witness.size()) != system.dim())
    throw DimensionError("witness dimension mismatch");

  DriftProbeReport report;
  report.family_id = std::move(family_id);
  report.beta = 1.0 + 1.0 / pi;

  for (const Rat& t : times) {
    for (const Rat& amp : amplitudes) {
      ControlPair controls = family(t, amp);
      Trajectory traj = integrate(system, controls, to_double(t), rel_tol);
      const std::vector<double>& x = traj.final_state();

      double px = 0, norm2 = 0;
      for (int i = 0; i < system.dim(); ++i) {
        px += to_double(witness[i]) * x[i];
        norm2 += x[i] * x[i];
      }
      const double xbeta = std::pow(std::sqrt(norm2), report.beta);

      PiecewisePoly uk = signals::iterated_primitive(controls.u, k);
      PiecewisePoly vk = signals::iterated_primitive(controls.v, k_prime);
      Rat delta = (uk * uk + vk * vk).integral_to(t);
      if (is_zero(delta))
        throw InvalidParamsError("drift probe family produced zero strength");

      DriftSweepPoint point{t, amp, px, delta, xbeta,
                            (px + xbeta) / to_double(delta)};
      report.points.push_back(point);
    }
  }
  report.fitted_constant = report.points.front().ratio;
  for (const auto& p : report.points)
    report.fitted_constant = std::min(report.fitted_constant, p.ratio);
  report.consistent = report.fitted_constant > 0;
  return report;
}

MagnusProbeReport magnus_truncation_probe(const CorpusEntry& entry,
                                          const Rat& alpha,
                                          const ControlPair& controls,
                                          const Rat& t, int truncation,
                                          double rel_tol,
                                          const std::vector<Rat>& scales,
                                          const freelie::HallBasis& basis) {
  MagnusProbeReport report;
  report.truncation = truncation;
  fields::PolySystem system = entry.build(alpha);

  const double base_l1 =
      signals::l1_norm(controls.u).value.mid() +
      signals::l1_norm(controls.v).value.mid();

  bool floor = true;
  for (const Rat& eps : scales) {
    ControlPair scaled(controls.u * eps, controls.v * eps);
    fields::RatVec expected =
        exact_state_oracle(entry, alpha, scaled, t, basis, truncation);
    Trajectory traj = integrate(system, scaled, to_double(t), rel_tol);
    double residual = 0, xmag = 0;
    for (int i = 0; i < entry.dim; ++i) {
      residual = std::max(
          residual, std::fabs(traj.final_state()[i] - to_double(expected[i])));
      xmag = std::max(xmag, std::fabs(traj.final_state()[i]));
    }
    report.points.push_back({to_double(eps) * base_l1, residual});
    if (residual > 100 * rel_tol * (1 + xmag)) floor = false;
  }
  report.at_solver_floor = floor;

  // Least-squares slope of log residual against log control size, ignoring
  // exact-zero residuals.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : report.points) {
    if (p.residual <= 0 || p.control_l1 <= 0) continue;
    double x = std::log(p.control_l1), y = std::log(p.residual);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  report.fitted_order =
      n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  return report;
}

GnProbeReport gn_probe(const std::function<PiecewisePoly(const Rat&)>& family,
                       int k, int m, signals::PExp p,
                       const std::vector<Rat>& sweep) {
  if (sweep.size() < 2)
    throw InvalidParamsError("gn probe needs at least two sweep points");
  const int pi = freelie::pi_order(k, m);

  GnProbeReport report;
  report.k = k;
  report.m = m;
  std::vector<Rat> ts = sweep;
  std::sort(ts.begin(), ts.end());

  for (const Rat& t : ts) {
    PiecewisePoly u = family(t);
    if (u.horizon() != t)
      throw InvalidParamsError("family horizon does not match the sweep time");
    Rat uk_sq = signals::l2_norm_squared(signals::iterated_primitive(u, k));
    if (is_zero(uk_sq))
      throw InvalidParamsError("gn probe: zero-strength control (u_k = 0)");

    Interval l1 = signals::l1_norm(u).value;
    Interval wmp = signals::wmp_norm(u, m, p).value;
    Interval numerator = signals::nn_pow(l1, pi + 1);
    Interval denominator =
        signals::nn_mul(signals::nn_mul(Interval(rat_pow(t, pi - 2 * k)),
                                        signals::nn_pow(wmp, pi - 1)),
                        Interval(uk_sq));
    report.points.push_back({t, signals::nn_div(numerator, denominator)});
  }

  double max_ratio = 0, min_ratio = 0;
  bool growth = true;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const double mid = report.points[i].ratio.mid();
    if (i == 0) {
      max_ratio = min_ratio = mid;
    } else {
      max_ratio = std::max(max_ratio, mid);
      min_ratio = std::min(min_ratio, mid);
      if (mid <= report.points[i - 1].ratio.mid()) growth = false;
    }
  }
  report.max_over_min = min_ratio > 0 ? max_ratio / min_ratio : 0;
  report.monotone_growth = growth;
  report.bounded = !growth && report.max_over_min < 10.0;
  return report;
}

}  // namespace stlc::sim

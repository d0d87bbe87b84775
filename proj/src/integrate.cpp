#include "stlc/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "stlc/errors.hpp"

namespace stlc::sim {

namespace {

// Right-hand side over one smooth segment: the control pieces are resolved
// once so stage evaluations at the segment boundary cannot leak into the
// neighbouring piece.
struct SegmentRhs {
  const fields::PolySystem& system;
  const signals::Poly1& u_piece;
  const signals::Poly1& v_piece;

  std::vector<double> operator()(double t, const std::vector<double>& x) const {
    const int d = system.dim();
    std::vector<double> dx(d);
    const double ut = u_piece.eval(t), vt = v_piece.eval(t);
    for (int i = 0; i < d; ++i)
      dx[i] = system.f0().component(i).eval(x) +
              ut * system.f1().component(i).eval(x) +
              vt * system.f2().component(i).eval(x);
    return dx;
  }
};

const signals::Poly1& piece_at(const signals::PiecewisePoly& p, double t) {
  int idx = 0;
  while (idx + 1 < p.piece_count() && t >= to_double(p.breakpoints()[idx + 1]))
    ++idx;
  return p.piece(idx);
}

}  // namespace

Trajectory integrate(const fields::PolySystem& system,
                     const signals::ControlPair& controls, double t_end,
                     double rel_tol, bool store_path) {
  if (!(rel_tol > 1e-14 && rel_tol < 1e-3))
    throw InvalidParamsError("rel_tol must lie in (1e-14, 1e-3)");
  const double horizon = to_double(controls.horizon());
  if (t_end <= 0 || t_end > horizon * (1 + 1e-12))
    throw InvalidParamsError("t_end must lie in (0, control horizon]");

  // Dormand-Prince 5(4) tableau.
  static const double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
       -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double c[7] = {0,       1.0 / 5, 3.0 / 10, 4.0 / 5,
                              8.0 / 9, 1.0,     1.0};
  static const double err_w[7] = {71.0 / 57600,     0.0,
                                  -71.0 / 16695,    71.0 / 1920,
                                  -17253.0 / 339200, 22.0 / 525,
                                  -1.0 / 40};

  const int d = system.dim();

  Trajectory traj;
  std::vector<double> x(d, 0.0);
  traj.times.push_back(0.0);
  traj.states.push_back(x);

  // Segment boundaries: control breakpoints clipped to [0, t_end].
  std::vector<double> cuts{0.0};
  auto add_cuts = [&](const signals::PiecewisePoly& p) {
    for (const Rat& b : p.breakpoints()) {
      double t = to_double(b);
      if (t > 0 && t < t_end) cuts.push_back(t);
    }
  };
  add_cuts(controls.u);
  add_cuts(controls.v);
  cuts.push_back(t_end);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::vector<double>> k(7, std::vector<double>(d));
  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    double t = cuts[seg];
    const double seg_end = cuts[seg + 1];
    const double seg_mid = (t + seg_end) / 2;
    SegmentRhs rhs{system, piece_at(controls.u, seg_mid),
                   piece_at(controls.v, seg_mid)};
    double h = (seg_end - t) / 8;

    while (t < seg_end) {
      bool final_step = false;
      if (h >= seg_end - t) {
        h = seg_end - t;
        final_step = true;
      }
      if (h < 1e-14 * t_end)
        throw StepUnderflowError("step size underflow at t = " +
                                 std::to_string(t));
      k[0] = rhs(t, x);
      std::vector<double> xs(d);
      for (int stage = 1; stage < 7; ++stage) {
        for (int i = 0; i < d; ++i) {
          double acc = x[i];
          for (int j = 0; j < stage; ++j) acc += h * a[stage][j] * k[j][i];
          xs[i] = acc;
        }
        k[stage] = rhs(t + c[stage] * h, xs);
      }
      // 5th-order solution is the last stage state; error from the
      // embedded 4th-order weights.
      double err = 0;
      for (int i = 0; i < d; ++i) {
        double e = 0;
        for (int j = 0; j < 7; ++j) e += err_w[j] * k[j][i];
        err = std::max(err, std::fabs(h * e) / (1.0 + std::fabs(xs[i])));
      }
      const double tol_step = rel_tol * (h / t_end);
      if (err <= tol_step) {
        t = final_step ? seg_end : t + h;
        x = xs;
        traj.stats.steps++;
        traj.stats.max_error_estimate =
            std::max(traj.stats.max_error_estimate, err);
        if (store_path) {
          traj.times.push_back(t);
          traj.states.push_back(x);
        }
      } else {
        traj.stats.rejected++;
      }
      const double grow =
          err > 0 ? 0.9 * std::pow(tol_step / err, 0.2) : 5.0;
      h *= std::clamp(grow, 0.2, 5.0);
    }
  }
  if (!store_path) {
    traj.times.push_back(t_end);
    traj.states.push_back(x);
  }
  return traj;
}

}  // namespace stlc::sim

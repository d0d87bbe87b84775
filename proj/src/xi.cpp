#include "stlc/xi.hpp"

#include <cmath>

#include "stlc/errors.hpp"

namespace stlc::signals {

using freelie::Bracket;
using freelie::FamilyId;
using freelie::FamilyKind;
using freelie::Gen;

XiSession::XiSession(const freelie::HallBasis& basis, ControlPair controls)
    : basis_(basis), controls_(std::move(controls)) {}

const PiecewisePoly& XiSession::xi_function(Bracket b) {
  auto it = cache_.find(b);
  if (it != cache_.end()) return it->second;

  PiecewisePoly result;
  if (b->is_generator()) {
    switch (b->gen) {
      case Gen::X0: {
        const Rat& horizon = controls_.horizon();
        result = PiecewisePoly({Rat(0), horizon}, {Poly1::variable()});
        break;
      }
      case Gen::X1:
        result = controls_.u.primitive();
        break;
      case Gen::X2:
        result = controls_.v.primitive();
        break;
    }
  } else {
    auto dec = basis_.hall_decompose(b);
    const PiecewisePoly& head = xi_function(dec.b1);
    PiecewisePoly tail_rate = xi_function(dec.b2).derivative();
    PiecewisePoly integrand =
        head.pow(static_cast<unsigned>(dec.m)) * tail_rate;
    result = integrand.primitive() * (Rat(1) / factorial(dec.m));
  }
  return cache_.emplace(b, std::move(result)).first->second;
}

Rat XiSession::xi(Bracket b, const Rat& t) {
  if (t > controls_.horizon())
    throw InvalidParamsError("time beyond the control horizon");
  return xi_function(b).eval(t);
}

Rat XiSession::xi(const freelie::LieElement& a, const Rat& t) {
  Rat s(0);
  for (const auto& [rank, coef] : a.terms())
    s += coef * xi(basis_.member(rank), t);
  return s;
}

Rat kernel_integral(const PiecewisePoly& g, int l, const Rat& t) {
  if (l < 0) throw InvalidParamsError("kernel order must be >= 0");
  // (t - s)^l / l! as a polynomial in s.
  std::vector<Rat> kc(l + 1, Rat(0));
  for (int i = 0; i <= l; ++i) {
    Rat c = binomial(l, i) * rat_pow(t, l - i) / factorial(l);
    kc[i] = (i % 2 == 0) ? c : -c;
  }
  PiecewisePoly kernel({Rat(0), g.horizon()}, {Poly1(std::move(kc))});
  return (g * kernel).integral_to(t);
}

Rat XiSession::xi_closed_form(const FamilyId& id, const Rat& t) {
  const PiecewisePoly& u = controls_.u;
  const PiecewisePoly& v = controls_.v;
  switch (id.kind) {
    case FamilyKind::M1:
      return iterated_primitive(u, id.j + 1).eval(t);
    case FamilyKind::M2:
      return iterated_primitive(v, id.j + 1).eval(t);
    case FamilyKind::W1: {
      if (id.j < 1) throw InvalidParamsError("W family needs j >= 1");
      PiecewisePoly uj = iterated_primitive(u, id.j);
      return kernel_integral(uj * uj, id.l, t) / 2;
    }
    case FamilyKind::W2: {
      if (id.j < 1) throw InvalidParamsError("W family needs j >= 1");
      PiecewisePoly vj = iterated_primitive(v, id.j);
      return kernel_integral(vj * vj, id.l, t) / 2;
    }
    case FamilyKind::C: {
      PiecewisePoly a = iterated_primitive(u, id.j / 2 + 1);
      PiecewisePoly b = iterated_primitive(v, (id.j + 1) / 2);
      return kernel_integral(a * b, id.l, t);
    }
  }
  throw InvalidParamsError("unknown family");
}

XiSession::IppSplit XiSession::xi_ipp(int j, int l, int depth, const Rat& t) {
  if (j < 0 || l < 0) throw InvalidParamsError("xi_ipp needs j, l >= 0");
  const int q = (j + 1) / 2;
  if (depth > q - 1)
    throw InvalidParamsError("integration-by-parts depth exceeds " +
                             std::to_string(q - 1));
  if (t > controls_.horizon())
    throw InvalidParamsError("time beyond the control horizon");

  IppSplit out;
  PiecewisePoly vq = iterated_primitive(controls_.v, q);
  for (int mu = 0; mu <= depth; ++mu) {
    // mu-th derivative of s -> v_q(s) (t-s)^l / l! at s = t: only the term
    // with the kernel differentiated exactly l times survives.
    Rat factor(0);
    if (mu >= l) {
      factor = binomial(mu, l) * iterated_primitive(controls_.v, q + l - mu)
                                     .eval(t);
      if (l % 2 == 1) factor = -factor;
    }
    Rat term = iterated_primitive(controls_.u, j / 2 + mu + 2).eval(t) * factor;
    if (mu % 2 == 1) term = -term;
    out.boundary_terms.push_back(term);
  }

  // Remainder: (-1)^{depth+1} int u_{j/2+depth+2} D^{depth+1}[v_q (t-.)^l/l!].
  std::vector<Rat> kc(l + 1, Rat(0));
  for (int i = 0; i <= l; ++i) {
    Rat c = binomial(l, i) * rat_pow(t, l - i) / factorial(l);
    kc[i] = (i % 2 == 0) ? c : -c;
  }
  PiecewisePoly kernel({Rat(0), controls_.horizon()}, {Poly1(std::move(kc))});
  PiecewisePoly g = vq * kernel;
  for (int i = 0; i <= depth; ++i) g = g.derivative();
  PiecewisePoly integrand = iterated_primitive(controls_.u, j / 2 + depth + 2) * g;
  Rat rem = integrand.integral_to(t);
  if ((depth + 1) % 2 == 1) rem = -rem;
  out.remainder = rem;
  return out;
}

ScalingReport scaling_probe(
    const freelie::HallBasis& basis, Bracket b,
    const std::function<ControlPair(const Rat&)>& family,
    const std::vector<Rat>& sweep) {
  if (sweep.size() < 4)
    throw InvalidParamsError("scaling probe needs at least 4 sweep points");
  ScalingReport report;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const Rat& t : sweep) {
    XiSession session(basis, family(t));
    Rat value = session.xi(b, t);
    if (is_zero(value))
      throw InvalidParamsError("scaling probe hit a vanishing coordinate");
    report.points.push_back({t, value});
    double x = std::log(to_double(t));
    double y = std::log(std::fabs(to_double(value)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(sweep.size());
  report.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  report.fitted_log_constant = (sy - report.fitted_exponent * sx) / n;
  return report;
}

}  // namespace stlc::signals

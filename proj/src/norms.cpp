#include "stlc/norms.hpp"

#include <algorithm>
#include <cmath>

#include "stlc/errors.hpp"

namespace stlc::signals {

Interval nn_mul(const Interval& a, const Interval& b) {
  return {a.lo * b.lo, a.hi * b.hi};
}

Interval nn_div(const Interval& a, const Interval& b) {
  if (sgn(b.lo) <= 0)
    throw InvalidParamsError("interval division by a possibly-zero value");
  return {a.lo / b.hi, a.hi / b.lo};
}

Interval nn_pow(const Interval& a, unsigned e) {
  return {rat_pow(a.lo, e), rat_pow(a.hi, e)};
}

namespace {

// Polynomial remainder of a by b (monic-scaled), for Sturm chains.
Poly1 poly_rem(Poly1 a, const Poly1& b) {
  while (!a.is_zero() && a.degree() >= b.degree()) {
    Rat f = a.coeff(a.degree()) / b.coeff(b.degree());
    int shift = a.degree() - b.degree();
    std::vector<Rat> c(a.degree() + 1, Rat(0));
    for (int i = 0; i <= a.degree(); ++i) c[i] = a.coeff(i);
    for (int i = 0; i <= b.degree(); ++i) c[i + shift] -= f * b.coeff(i);
    a = Poly1(std::move(c));
  }
  return a;
}

std::vector<Poly1> sturm_chain(const Poly1& p) {
  std::vector<Poly1> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() >= 0) {
    Poly1 r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sign_variations(const std::vector<Poly1>& chain, const Rat& x) {
  int variations = 0, last = 0;
  for (const Poly1& p : chain) {
    int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

// Divides out (s - r)^k; returns multiplicity.
int deflate_root(Poly1& p, const Rat& r) {
  int mult = 0;
  while (!p.is_zero() && is_zero(p.eval(r))) {
    // Synthetic division by (s - r).
    std::vector<Rat> c(p.degree(), Rat(0));
    Rat carry(0);
    for (int i = p.degree(); i >= 1; --i) {
      carry = p.coeff(i) + carry * r;
      c[i - 1] = carry;
    }
    p = Poly1(std::move(c));
    ++mult;
  }
  return mult;
}

// Bound of p over [a, b] by interval arithmetic on the centered form.
Interval range_bound(const Poly1& p, const Rat& a, const Rat& b) {
  // Evaluate sum c_i x^i with x in [a, b].
  Interval acc(Rat(0));
  Interval x{a, b};
  for (int i = p.degree(); i >= 0; --i) {
    // acc = acc * x + c_i with full sign handling.
    Rat products[4] = {acc.lo * x.lo, acc.lo * x.hi, acc.hi * x.lo,
                       acc.hi * x.hi};
    Rat lo = products[0], hi = products[0];
    for (const Rat& v : products) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    acc = Interval{lo + p.coeff(i), hi + p.coeff(i)};
  }
  return acc;
}

}  // namespace

int count_roots_in(const Poly1& p, const Rat& a, const Rat& b) {
  if (p.is_zero())
    throw InvalidParamsError("root count of the zero polynomial");
  if (p.degree() == 0) return 0;
  auto chain = sturm_chain(p);
  int count = sign_variations(chain, a) - sign_variations(chain, b);
  // Sturm counts roots in (a, b]; drop b if it is one.
  if (is_zero(p.eval(b))) --count;
  return count;
}

std::vector<Rat> rational_roots(const Poly1& p) {
  std::vector<Rat> roots;
  if (p.is_zero() || p.degree() == 0) return roots;
  Poly1 q = p;
  // Strip roots at zero.
  if (is_zero(q.coeff(0))) {
    roots.push_back(Rat(0));
    deflate_root(q, Rat(0));
    if (q.is_zero() || q.degree() == 0) return roots;
  }
  // Integer-scale the coefficients.
  mpz_class lcm_den(1);
  for (int i = 0; i <= q.degree(); ++i) {
    mpz_class den = q.coeff(i).get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    lcm_den = lcm_den / g * den;
  }
  std::vector<mpz_class> ic(q.degree() + 1);
  for (int i = 0; i <= q.degree(); ++i)
    ic[i] = mpz_class(q.coeff(i) * Rat(lcm_den));
  // Divisor enumeration is only worthwhile for modest coefficients; when it
  // would explode, report no rational roots and let the caller fall back to
  // certified enclosures.
  auto divisors = [](mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> divs;
    long steps = 0;
    for (mpz_class i = 1; i * i <= n; ++i) {
      if (++steps > 200000) return std::vector<mpz_class>{};
      if (n % i == 0) {
        divs.push_back(i);
        divs.push_back(n / i);
      }
    }
    return divs;
  };
  if (ic.front() == 0 || ic.back() == 0) return roots;  // deflation left none
  const auto nums = divisors(ic.front());
  const auto dens = divisors(ic.back());
  if (nums.size() * dens.size() <= 100000) {
    for (const mpz_class& num : nums) {
      for (const mpz_class& den : dens) {
        for (int s : {1, -1}) {
          Rat cand(s * num, den);
          cand.canonicalize();
          if (is_zero(q.eval(cand))) {
            if (std::find(roots.begin(), roots.end(), cand) == roots.end())
              roots.push_back(cand);
          }
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// Enclosure of int_a^b |p| when p may change sign at irrational points:
// adaptive bisection with interval bounds. err accumulates the enclosure
// width budget actually used.
void abs_integral_adaptive(const Poly1& p, const Rat& a, const Rat& b,
                           const Rat& tol, Rat& lo, Rat& hi, int depth) {
  Interval bound = range_bound(p, a, b);
  if (sgn(bound.lo) >= 0 || sgn(bound.hi) <= 0) {
    Rat v = rat_abs(p.antiderivative().eval(b) - p.antiderivative().eval(a));
    lo += v;
    hi += v;
    return;
  }
  Rat mag = std::max(rat_abs(bound.lo), rat_abs(bound.hi));
  Rat cell = (b - a) * mag;
  if (depth >= 60 || cell <= tol) {
    // |int |p|| is between |int p| and (b - a) * mag.
    Rat v = rat_abs(p.antiderivative().eval(b) - p.antiderivative().eval(a));
    lo += v;
    hi += cell;
    return;
  }
  Rat mid = (a + b) / 2;
  abs_integral_adaptive(p, a, mid, tol / 2, lo, hi, depth + 1);
  abs_integral_adaptive(p, mid, b, tol / 2, lo, hi, depth + 1);
}

// Enclosure of int_a^b |p|. Exact when sign changes are rational.
Interval abs_integral(const Poly1& p, const Rat& a, const Rat& b,
                      const Rat& tol) {
  if (p.is_zero()) return Interval(Rat(0));
  // Split at rational roots, then certify sign constancy by Sturm.
  std::vector<Rat> cuts{a};
  for (const Rat& r : rational_roots(p))
    if (a < r && r < b) cuts.push_back(r);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  Rat lo(0), hi(0);
  Poly1 anti = p.antiderivative();
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (count_roots_in(p, cuts[i], cuts[i + 1]) == 0) {
      Rat v = rat_abs(anti.eval(cuts[i + 1]) - anti.eval(cuts[i]));
      lo += v;
      hi += v;
    } else {
      abs_integral_adaptive(p, cuts[i], cuts[i + 1], tol, lo, hi, 0);
    }
  }
  return {lo, hi};
}

// Enclosure of max_{[a,b]} |p|.
Interval abs_sup(const Poly1& p, const Rat& a, const Rat& b, const Rat& tol) {
  if (p.is_zero()) return Interval(Rat(0));
  Rat best = std::max(rat_abs(p.eval(a)), rat_abs(p.eval(b)));
  Poly1 dp = p.derivative();
  int interior_critical = 0;
  if (!dp.is_zero() && dp.degree() >= 1) {
    for (const Rat& r : rational_roots(dp))
      if (a < r && r < b) {
        best = std::max(best, rat_abs(p.eval(r)));
        ++interior_critical;
      }
    int total = count_roots_in(dp, a, b);
    if (total <= interior_critical) return Interval(best);
  } else {
    return Interval(best);  // constant or linear: endpoints suffice
  }
  // Unknown critical points: refine an upper bound by bisection.
  struct Cell {
    Rat a, b;
  };
  std::vector<Cell> cells{{a, b}};
  Rat upper = best;
  for (int round = 0; round < 60 && !cells.empty(); ++round) {
    std::vector<Cell> next;
    upper = best;
    for (const Cell& c : cells) {
      Interval bound = range_bound(p, c.a, c.b);
      Rat cell_hi = std::max(rat_abs(bound.lo), rat_abs(bound.hi));
      if (cell_hi <= best) continue;  // cannot beat the known value
      upper = std::max(upper, cell_hi);
      Rat mid = (c.a + c.b) / 2;
      best = std::max(best, rat_abs(p.eval(mid)));
      next.push_back({c.a, mid});
      next.push_back({mid, c.b});
    }
    cells = std::move(next);
    if (upper - best <= tol * (best + 1)) break;
  }
  return {best, std::max(best, upper)};
}

}  // namespace

NormResult l1_norm(const PiecewisePoly& u, const Rat& rel_tol) {
  Interval total(Rat(0));
  // Scale budget: crude magnitude estimate from endpoints.
  Rat tol = rel_tol;
  for (int i = 0; i < u.piece_count(); ++i) {
    Interval piece = abs_integral(u.piece(i), u.breakpoints()[i],
                                  u.breakpoints()[i + 1],
                                  tol / u.piece_count());
    total = total + piece;
  }
  return {total, total.exact()};
}

Rat l2_norm_squared(const PiecewisePoly& u) { return (u * u).integral(); }

NormResult l2_norm(const PiecewisePoly& u) {
  Interval v = sqrt_enclosure(l2_norm_squared(u));
  return {v, v.exact()};
}

NormResult linf_norm(const PiecewisePoly& u, const Rat& rel_tol) {
  Interval best(Rat(0));
  for (int i = 0; i < u.piece_count(); ++i) {
    Interval piece = abs_sup(u.piece(i), u.breakpoints()[i],
                             u.breakpoints()[i + 1], rel_tol);
    best = {std::max(best.lo, piece.lo), std::max(best.hi, piece.hi)};
  }
  return {best, best.exact()};
}

double lp_norm(const PiecewisePoly& u, double p) {
  if (p < 1) throw InvalidParamsError("Lp norm needs p >= 1");
  // Adaptive Simpson per piece on |u|^p, relative tolerance 1e-12.
  auto f = [&](double x) { return std::pow(std::fabs(u.eval(x)), p); };
  std::function<double(double, double, double, double, double, double)> rec =
      [&](double a, double b, double fa, double fm, double fb,
          double whole) -> double {
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (std::fabs(left + right - whole) <=
        1e-12 * (std::fabs(left + right) + 1e-300) * 15)
      return left + right;
    return rec(a, m, fa, flm, fm, left) + rec(m, b, fm, frm, fb, right);
  };
  double total = 0;
  for (int i = 0; i < u.piece_count(); ++i) {
    double a = to_double(u.breakpoints()[i]);
    double b = to_double(u.breakpoints()[i + 1]);
    double fa = f(a + 1e-15 * (b - a)), fb = f(b - 1e-15 * (b - a));
    double m = (a + b) / 2, fm = f(m);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    total += rec(a, b, fa, fm, fb, whole);
  }
  return std::pow(total, 1.0 / p);
}

NormResult wmp_norm(const PiecewisePoly& u, int m, PExp p) {
  if (m < 0) throw InvalidParamsError("Sobolev order must be >= 0");
  // Junction continuity up to order m - 1.
  PiecewisePoly d = u;
  for (int order = 0; order <= m - 1; ++order) {
    for (int i = 0; i + 1 < d.piece_count(); ++i) {
      const Rat& t = d.breakpoints()[i + 1];
      if (d.piece(i).eval(t) != d.piece(i + 1).eval(t))
        throw InvalidParamsError(
            "junction discontinuity at order " + std::to_string(order) +
            "; the function is not in the requested Sobolev class");
    }
    d = d.derivative();
  }

  Interval total(Rat(0));
  bool exact = true;
  PiecewisePoly g = u;
  for (int order = 0; order <= m; ++order) {
    NormResult r{};
    switch (p) {
      case PExp::One: r = l1_norm(g); break;
      case PExp::Two: r = l2_norm(g); break;
      case PExp::Inf: r = linf_norm(g); break;
    }
    total = total + r.value;
    exact = exact && r.exact;
    if (order < m) g = g.derivative();
  }
  return {total, exact};
}

Interval sqrt_enclosure(const Rat& x, const Rat& rel_tol) {
  if (sgn(x) < 0) throw InvalidParamsError("sqrt of a negative rational");
  if (is_zero(x)) return Interval(Rat(0));
  double guess = std::sqrt(to_double(x));
  Rat r(guess);
  if (sgn(r) <= 0) r = rat(1);
  // One exact Newton step tightens the double guess, then widen to certify.
  r = (r + x / r) / 2;  // r >= sqrt(x) by AM-GM
  Rat hi = r;
  Rat lo = x / hi;      // lo <= sqrt(x) <= hi
  int guard = 0;
  while (hi - lo > rel_tol * hi && guard++ < 64) {
    hi = (hi + lo) / 2;
    hi = (hi + x / hi) / 2;
    lo = x / hi;
  }
  return {lo, hi};
}

}  // namespace stlc::signals

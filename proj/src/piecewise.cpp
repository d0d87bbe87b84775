#include "stlc/piecewise.hpp"

#include <algorithm>
#include <sstream>

#include "stlc/errors.hpp"

namespace stlc::signals {

Poly1 Poly1::variable() { return Poly1(std::vector<Rat>{Rat(0), Rat(1)}); }

Poly1 Poly1::operator+(const Poly1& o) const {
  std::vector<Rat> c(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return Poly1(std::move(c));
}

Poly1 Poly1::operator-(const Poly1& o) const { return *this + (-o); }

Poly1 Poly1::operator*(const Poly1& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rat> c(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Poly1(std::move(c));
}

Poly1 Poly1::operator*(const Rat& c) const {
  if (stlc::is_zero(c)) return {};
  std::vector<Rat> out = coeffs_;
  for (Rat& x : out) x *= c;
  return Poly1(std::move(out));
}

Poly1 Poly1::pow(unsigned e) const {
  Poly1 acc(Rat(1));
  for (unsigned i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

Poly1 Poly1::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rat> c(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    c[i - 1] = coeffs_[i] * Rat(static_cast<long>(i));
  return Poly1(std::move(c));
}

Poly1 Poly1::antiderivative() const {
  if (is_zero()) return {};
  std::vector<Rat> c(coeffs_.size() + 1, Rat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    c[i + 1] = coeffs_[i] / Rat(static_cast<long>(i + 1));
  return Poly1(std::move(c));
}

Poly1 Poly1::compose_affine(const Rat& a, const Rat& b) const {
  // Horner in (a + b s).
  Poly1 shift(std::vector<Rat>{a, b});
  Poly1 acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * shift + Poly1(*it);
  return acc;
}

Rat Poly1::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

double Poly1::eval(double x) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + to_double(*it);
  return acc;
}

std::string Poly1::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rat c = coeff(i);
    if (stlc::is_zero(c)) continue;
    if (!first) {
      os << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    } else if (sgn(c) < 0) {
      os << "-";
      c = -c;
    }
    first = false;
    if (i == 0 || c != Rat(1)) {
      os << to_string(c);
      if (i > 0) os << "*";
    }
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

PiecewisePoly::PiecewisePoly(std::vector<Rat> breakpoints,
                             std::vector<Poly1> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size())
    throw InvalidParamsError("piecewise data sizes inconsistent");
  if (!stlc::is_zero(breaks_.front()))
    throw InvalidParamsError("piecewise domain must start at 0");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]))
      throw InvalidParamsError("breakpoints must increase strictly");
  canonicalize();
}

PiecewisePoly PiecewisePoly::constant(const Rat& horizon, const Rat& value) {
  if (!(sgn(horizon) > 0)) throw InvalidParamsError("horizon must be > 0");
  return PiecewisePoly({Rat(0), horizon}, {Poly1(value)});
}

void PiecewisePoly::canonicalize() {
  std::vector<Rat> nb{breaks_[0]};
  std::vector<Poly1> np;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!np.empty() && np.back() == pieces_[i]) {
      nb.back() = breaks_[i + 1];
    } else {
      np.push_back(pieces_[i]);
      nb.push_back(breaks_[i + 1]);
    }
  }
  breaks_ = std::move(nb);
  pieces_ = std::move(np);
}

Rat PiecewisePoly::eval(const Rat& t) const {
  if (sgn(t) < 0 || t > horizon())
    throw InvalidParamsError("evaluation outside [0, horizon]");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  int idx = static_cast<int>(it - breaks_.begin()) - 1;
  if (idx >= piece_count()) idx = piece_count() - 1;
  return pieces_[idx].eval(t);
}

double PiecewisePoly::eval(double t) const {
  int idx = 0;
  while (idx + 1 < piece_count() && t >= to_double(breaks_[idx + 1])) ++idx;
  return pieces_[idx].eval(t);
}

std::vector<Rat> merged_breakpoints(const PiecewisePoly& a,
                                    const PiecewisePoly& b) {
  if (a.horizon() != b.horizon())
    throw InvalidParamsError("piecewise horizons differ");
  std::vector<Rat> m;
  std::merge(a.breakpoints().begin(), a.breakpoints().end(),
             b.breakpoints().begin(), b.breakpoints().end(),
             std::back_inserter(m));
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

namespace {

template <typename Op>
PiecewisePoly combine(const PiecewisePoly& a, const PiecewisePoly& b, Op op) {
  std::vector<Rat> breaks = merged_breakpoints(a, b);
  std::vector<Poly1> pieces;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Rat mid = (breaks[i] + breaks[i + 1]) / 2;
    // Locate source pieces by midpoint.
    const auto locate = [&](const PiecewisePoly& p) {
      const auto& bp = p.breakpoints();
      auto it = std::upper_bound(bp.begin(), bp.end(), mid);
      return static_cast<int>(it - bp.begin()) - 1;
    };
    pieces.push_back(op(a.piece(locate(a)), b.piece(locate(b))));
  }
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

}  // namespace

PiecewisePoly PiecewisePoly::operator+(const PiecewisePoly& o) const {
  return combine(*this, o, [](const Poly1& x, const Poly1& y) { return x + y; });
}

PiecewisePoly PiecewisePoly::operator-(const PiecewisePoly& o) const {
  return combine(*this, o, [](const Poly1& x, const Poly1& y) { return x - y; });
}

PiecewisePoly PiecewisePoly::operator*(const PiecewisePoly& o) const {
  return combine(*this, o, [](const Poly1& x, const Poly1& y) { return x * y; });
}

PiecewisePoly PiecewisePoly::operator*(const Rat& c) const {
  std::vector<Poly1> pieces;
  for (const Poly1& p : pieces_) pieces.push_back(p * c);
  return PiecewisePoly(breaks_, std::move(pieces));
}

PiecewisePoly PiecewisePoly::pow(unsigned e) const {
  std::vector<Poly1> pieces;
  for (const Poly1& p : pieces_) pieces.push_back(p.pow(e));
  return PiecewisePoly(breaks_, std::move(pieces));
}

PiecewisePoly PiecewisePoly::derivative() const {
  std::vector<Poly1> pieces;
  for (const Poly1& p : pieces_) pieces.push_back(p.derivative());
  return PiecewisePoly(breaks_, std::move(pieces));
}

PiecewisePoly PiecewisePoly::primitive() const {
  std::vector<Poly1> pieces;
  Rat offset(0);
  for (int i = 0; i < piece_count(); ++i) {
    Poly1 anti = pieces_[i].antiderivative();
    pieces.push_back(anti + Poly1(offset - anti.eval(breaks_[i])));
    offset = pieces.back().eval(breaks_[i + 1]);
  }
  return PiecewisePoly(breaks_, std::move(pieces));
}

PiecewisePoly PiecewisePoly::restrict(const Rat& t) const {
  if (!(sgn(t) > 0) || t > horizon())
    throw InvalidParamsError("restriction outside (0, horizon]");
  std::vector<Rat> breaks;
  std::vector<Poly1> pieces;
  for (int i = 0; i < piece_count(); ++i) {
    breaks.push_back(breaks_[i]);
    pieces.push_back(pieces_[i]);
    if (breaks_[i + 1] >= t) break;
  }
  breaks.push_back(t);
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

bool PiecewisePoly::is_zero() const {
  for (const Poly1& p : pieces_)
    if (!p.is_zero()) return false;
  return true;
}

PiecewisePoly iterated_primitive(const PiecewisePoly& u, int j) {
  if (j < 0) throw InvalidParamsError("iterated primitive needs j >= 0");
  PiecewisePoly r = u;
  for (int i = 0; i < j; ++i) r = r.primitive();
  return r;
}

ControlPair::ControlPair(PiecewisePoly u_, PiecewisePoly v_)
    : u(std::move(u_)), v(std::move(v_)) {
  if (u.horizon() != v.horizon())
    throw InvalidParamsError("control pair horizons differ");
}

}  // namespace stlc::signals

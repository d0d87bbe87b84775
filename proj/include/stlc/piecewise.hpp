#ifndef STLC_PIECEWISE_HPP
#define STLC_PIECEWISE_HPP

#include <string>
#include <vector>

#include "stlc/rational.hpp"

namespace stlc::signals {

// Dense univariate polynomial over Q, coefficients ascending.
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(const Rat& c) {
    if (!stlc::is_zero(c)) coeffs_.push_back(c);
  }
  explicit Poly1(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }
  static Poly1 variable();

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rat coeff(int i) const {
    return i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : Rat(0);
  }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  Poly1 operator+(const Poly1& o) const;
  Poly1 operator-(const Poly1& o) const;
  Poly1 operator*(const Poly1& o) const;
  Poly1 operator*(const Rat& c) const;
  Poly1 operator-() const { return *this * Rat(-1); }
  bool operator==(const Poly1& o) const { return coeffs_ == o.coeffs_; }

  Poly1 pow(unsigned e) const;
  Poly1 derivative() const;
  Poly1 antiderivative() const;  // constant term 0
  // p(a + b s).
  Poly1 compose_affine(const Rat& a, const Rat& b) const;

  Rat eval(const Rat& x) const;
  double eval(double x) const;

  std::string str(const std::string& var = "s") const;

 private:
  void trim() {
    while (!coeffs_.empty() && stlc::is_zero(coeffs_.back()))
      coeffs_.pop_back();
  }
  std::vector<Rat> coeffs_;
};

// Piecewise polynomial on [0, T] with rational breakpoints; the canonical
// form merges adjacent pieces carrying the same polynomial.
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<Rat> breakpoints, std::vector<Poly1> pieces);
  static PiecewisePoly constant(const Rat& horizon, const Rat& value);
  static PiecewisePoly zero(const Rat& horizon) {
    return constant(horizon, Rat(0));
  }

  const Rat& horizon() const { return breaks_.back(); }
  int piece_count() const { return static_cast<int>(pieces_.size()); }
  const std::vector<Rat>& breakpoints() const { return breaks_; }
  const Poly1& piece(int i) const { return pieces_[i]; }

  // Value using the piece [b_i, b_{i+1}) containing t (the last piece at
  // t = T). Only matters at jump discontinuities.
  Rat eval(const Rat& t) const;
  double eval(double t) const;

  PiecewisePoly operator+(const PiecewisePoly& o) const;
  PiecewisePoly operator-(const PiecewisePoly& o) const;
  PiecewisePoly operator*(const PiecewisePoly& o) const;
  PiecewisePoly operator*(const Rat& c) const;
  PiecewisePoly operator-() const { return *this * Rat(-1); }
  bool operator==(const PiecewisePoly& o) const {
    return breaks_ == o.breaks_ && pieces_ == o.pieces_;
  }

  PiecewisePoly pow(unsigned e) const;
  PiecewisePoly derivative() const;
  // Continuous antiderivative vanishing at 0.
  PiecewisePoly primitive() const;

  Rat integral() const { return primitive().eval(horizon()); }
  Rat integral_to(const Rat& t) const { return primitive().eval(t); }

  PiecewisePoly restrict(const Rat& t) const;

  bool is_zero() const;

 private:
  void canonicalize();
  std::vector<Rat> breaks_;   // 0 = b_0 < ... < b_n = T
  std::vector<Poly1> pieces_;
};

// Common refinement helper used by the binary operations.
std::vector<Rat> merged_breakpoints(const PiecewisePoly& a,
                                    const PiecewisePoly& b);

// u_j: the j-fold iterated primitive, u_0 = u.
PiecewisePoly iterated_primitive(const PiecewisePoly& u, int j);

struct ControlPair {
  PiecewisePoly u, v;

  ControlPair(PiecewisePoly u_, PiecewisePoly v_);
  const Rat& horizon() const { return u.horizon(); }
};

}  // namespace stlc::signals

#endif

#ifndef STLC_POLYNOMIAL_HPP
#define STLC_POLYNOMIAL_HPP

#include <map>
#include <string>
#include <vector>

#include "stlc/rational.hpp"

namespace stlc::fields {

// Exponent vector in x1..xd; graded-lexicographic order.
struct Monomial {
  std::vector<unsigned> exps;

  unsigned degree() const {
    unsigned d = 0;
    for (unsigned e : exps) d += e;
    return d;
  }
  bool operator==(const Monomial& o) const { return exps == o.exps; }
  bool operator<(const Monomial& o) const {
    unsigned da = degree(), db = o.degree();
    if (da != db) return da < db;
    return exps < o.exps;
  }
};

// Sparse multivariate polynomial over Q in a fixed ambient dimension.
class Poly {
 public:
  explicit Poly(int dim = 0) : dim_(dim) {}

  static Poly constant(int dim, const Rat& c);
  static Poly variable(int dim, int index);  // x_{index}, 1-based

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  void add_term(const Monomial& m, const Rat& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& c) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }

  Poly derivative(int var_index) const;  // d/dx_{var_index}, 1-based
  Rat eval(const std::vector<Rat>& x) const;
  double eval(const std::vector<double>& x) const;
  Rat at_zero() const;  // constant term
  unsigned total_degree() const;

  std::string str(const std::vector<std::string>& var_names = {}) const;

 private:
  int dim_;
  std::map<Monomial, Rat> terms_;
};

}  // namespace stlc::fields

#endif

#include "stlc/polynomial.hpp"

#include <sstream>

#include "stlc/errors.hpp"

namespace stlc::fields {

Poly Poly::constant(int dim, const Rat& c) {
  Poly p(dim);
  p.add_term(Monomial{std::vector<unsigned>(dim, 0)}, c);
  return p;
}

Poly Poly::variable(int dim, int index) {
  if (index < 1 || index > dim)
    throw DimensionError("variable index out of range");
  Poly p(dim);
  Monomial m{std::vector<unsigned>(dim, 0)};
  m.exps[index - 1] = 1;
  p.add_term(m, Rat(1));
  return p;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (stlc::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (stlc::is_zero(it->second)) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  if (dim_ != o.dim_) throw DimensionError("polynomial dimension mismatch");
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (dim_ != o.dim_) throw DimensionError("polynomial dimension mismatch");
  Poly r(dim_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m = ma;
      for (int i = 0; i < dim_; ++i) m.exps[i] += mb.exps[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Poly Poly::operator*(const Rat& c) const {
  Poly r(dim_);
  if (stlc::is_zero(c)) return r;
  for (const auto& [m, coef] : terms_) r.terms_[m] = coef * c;
  return r;
}

Poly Poly::operator-() const { return *this * Rat(-1); }

Poly Poly::derivative(int var_index) const {
  Poly r(dim_);
  const int i = var_index - 1;
  for (const auto& [m, c] : terms_) {
    if (m.exps[i] == 0) continue;
    Monomial d = m;
    d.exps[i] -= 1;
    r.add_term(d, c * Rat(static_cast<long>(m.exps[i])));
  }
  return r;
}

Rat Poly::eval(const std::vector<Rat>& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw DimensionError("evaluation point dimension mismatch");
  Rat total(0);
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < dim_; ++i)
      if (m.exps[i]) t *= rat_pow(x[i], m.exps[i]);
    total += t;
  }
  return total;
}

double Poly::eval(const std::vector<double>& x) const {
  double total = 0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (int i = 0; i < dim_; ++i)
      for (unsigned e = 0; e < m.exps[i]; ++e) t *= x[i];
    total += t;
  }
  return total;
}

Rat Poly::at_zero() const {
  auto it = terms_.find(Monomial{std::vector<unsigned>(dim_, 0)});
  return it == terms_.end() ? Rat(0) : it->second;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::string Poly::str(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest degree first reads better.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rat a = c;
    if (!first) {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    bool has_vars = m.degree() > 0;
    if (!has_vars || a != Rat(1)) {
      if (!first && a == Rat(-1) && has_vars) {
        os << "-";
      } else {
        os << to_string(a);
        if (has_vars) os << "*";
      }
    }
    bool star = false;
    for (int i = 0; i < dim_; ++i) {
      if (!m.exps[i]) continue;
      if (star) os << "*";
      star = true;
      if (static_cast<int>(var_names.size()) > i)
        os << var_names[i];
      else
        os << "x" << (i + 1);
      if (m.exps[i] > 1) os << "^" << m.exps[i];
    }
  }
  return os.str();
}

}  // namespace stlc::fields

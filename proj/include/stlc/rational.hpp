#ifndef STLC_RATIONAL_HPP
#define STLC_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace stlc {

// Exact arbitrary-precision rational. All algebraic identities in this
// project are exact, so no floating point leaks into the core modules.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline Rat rat_abs(const Rat& q) { return sgn(q) < 0 ? Rat(-q) : q; }

inline Rat rat_pow(const Rat& base, unsigned e) {
  Rat acc(1);
  Rat b = base;
  while (e) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

inline Rat factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rat(f);
}

inline Rat binomial(unsigned n, unsigned k) {
  if (k > n) return Rat(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(b);
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline double to_double(const Rat& q) { return q.get_d(); }

// Parses "a", "-a", "a/b". Returns nullopt on malformed input.
inline std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t slash = text.find('/');
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!is_int(text)) return std::nullopt;
      return Rat(mpz_class(text));
    }
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    mpz_class d(den);
    if (d == 0) return std::nullopt;
    Rat q(mpz_class(num), d);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace stlc

#endif

#ifndef STLC_CORPUS_HPP
#define STLC_CORPUS_HPP

#include <map>
#include <string>
#include <vector>

#include "stlc/vectorfield.hpp"

namespace stlc::corpus {

// The bundled example systems. Parameters default to the values used across
// the test suite; the .sys files under corpus/ carry the same data in DSL
// form and the parser tests check both agree.

// d = 3: x1' = u, x2' = v, x3' = x1^2 + x2^2 + alpha x1 x2.
fields::PolySystem jouet(const Rat& alpha);

// d = 4: x1' = u, x2' = x1, x3' = v, x4' = x2^2 + x3^2 + alpha x2 x3.
// Integrator chain with k = 2, k' = 1.
fields::PolySystem exintegrateur(const Rat& alpha);

// d = 4: x1' = u, x2' = x1, x3' = v,
// x4' = x1^2 + 2 x3^2 + x1 x3 / 2 - 1028 x2^2 - 643 v x1^2 - 2 v x3.
fields::PolySystem excomplexe();

// d = 4: x1' = u, x2' = x1, x3' = v, x4' = x2^2 + x3^2.
fields::PolySystem exassym();

// d = 3: x1' = u, x2' = v, x3' = x1^4 + x2^4.
fields::PolySystem exquartic();

// d = 5: x1' = u, x2' = v, x3' = x1 v, x4' = x3,
// x5' = x1^2 / 2 + x2^2 / 2 + x4.
fields::PolySystem exf1f2();

}  // namespace stlc::corpus

#endif

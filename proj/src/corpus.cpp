#include "stlc/corpus.hpp"

namespace stlc::corpus {

using fields::Poly;
using fields::PolySystem;
using fields::PolyVectorField;

namespace {

Poly x(int dim, int i) { return Poly::variable(dim, i); }

}  // namespace

PolySystem jouet(const Rat& alpha) {
  const int d = 3;
  PolyVectorField f0(d);
  f0.component(2) = x(d, 1) * x(d, 1) + x(d, 2) * x(d, 2) +
                    x(d, 1) * x(d, 2) * alpha;
  return PolySystem(f0, PolyVectorField::basis_vector(d, 1),
                    PolyVectorField::basis_vector(d, 2));
}

PolySystem exintegrateur(const Rat& alpha) {
  const int d = 4;
  PolyVectorField f0(d);
  f0.component(1) = x(d, 1);
  f0.component(3) = x(d, 2) * x(d, 2) + x(d, 3) * x(d, 3) +
                    x(d, 2) * x(d, 3) * alpha;
  return PolySystem(f0, PolyVectorField::basis_vector(d, 1),
                    PolyVectorField::basis_vector(d, 3));
}

PolySystem excomplexe() {
  const int d = 4;
  PolyVectorField f0(d);
  f0.component(1) = x(d, 1);
  f0.component(3) = x(d, 1) * x(d, 1) + x(d, 3) * x(d, 3) * rat(2) +
                    x(d, 1) * x(d, 3) * rat(1, 2) -
                    x(d, 2) * x(d, 2) * rat(1028);
  PolyVectorField f2(d);
  f2.component(2) = Poly::constant(d, rat(1));
  f2.component(3) = x(d, 1) * x(d, 1) * rat(-643) + x(d, 3) * rat(-2);
  return PolySystem(f0, PolyVectorField::basis_vector(d, 1), f2);
}

PolySystem exassym() {
  const int d = 4;
  PolyVectorField f0(d);
  f0.component(1) = x(d, 1);
  f0.component(3) = x(d, 2) * x(d, 2) + x(d, 3) * x(d, 3);
  return PolySystem(f0, PolyVectorField::basis_vector(d, 1),
                    PolyVectorField::basis_vector(d, 3));
}

PolySystem exquartic() {
  const int d = 3;
  PolyVectorField f0(d);
  Poly x1 = x(d, 1), x2 = x(d, 2);
  f0.component(2) = x1 * x1 * x1 * x1 + x2 * x2 * x2 * x2;
  return PolySystem(f0, PolyVectorField::basis_vector(d, 1),
                    PolyVectorField::basis_vector(d, 2));
}

PolySystem exf1f2() {
  const int d = 5;
  PolyVectorField f0(d);
  f0.component(3) = x(d, 3);
  f0.component(4) = x(d, 1) * x(d, 1) * rat(1, 2) +
                    x(d, 2) * x(d, 2) * rat(1, 2) + x(d, 4);
  PolyVectorField f2(d);
  f2.component(1) = Poly::constant(d, rat(1));
  f2.component(2) = x(d, 1);
  return PolySystem(f0, PolyVectorField::basis_vector(d, 1), f2);
}

}  // namespace stlc::corpus

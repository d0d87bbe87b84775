#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stlc/corpus.hpp"
#include "stlc/errors.hpp"
#include "stlc/vectorfield.hpp"

using namespace stlc;
using namespace stlc::fields;
using freelie::Bracket;
using freelie::FamilyKind;
using freelie::HallBasis;

namespace {

Poly random_poly(int dim, int max_degree, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> expo(0, max_degree);
  Poly p(dim);
  for (int t = 0; t < 4; ++t) {
    Monomial m{std::vector<unsigned>(dim, 0)};
    int budget = max_degree;
    for (int i = 0; i < dim && budget > 0; ++i) {
      int e = expo(rng) % (budget + 1);
      m.exps[i] = e;
      budget -= e;
    }
    p.add_term(m, rat(coef(rng)));
  }
  return p;
}

PolyVectorField random_field(int dim, int max_degree, std::mt19937& rng) {
  PolyVectorField f(dim);
  for (int i = 0; i < dim; ++i) f.component(i) = random_poly(dim, max_degree, rng);
  return f;
}

RatVec unit_vec(int dim, int index, const Rat& scale = Rat(1)) {
  RatVec v(dim, Rat(0));
  v[index - 1] = scale;
  return v;
}

}  // namespace

TEST_CASE("vf_bracket hand example and antisymmetry") {
  const int d = 3;
  PolyVectorField f = PolyVectorField::basis_vector(d, 1);
  PolyVectorField g(d);
  g.component(2) = Poly::variable(d, 1) * Poly::variable(d, 1);

  PolyVectorField fg = vf_bracket(f, g);
  PolyVectorField expected(d);
  expected.component(2) = Poly::variable(d, 1) * rat(2);
  CHECK(fg == expected);

  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    PolyVectorField h = random_field(3, 3, rng);
    CHECK(vf_bracket(h, h).is_zero());
  }

  PolyVectorField wrong(2);
  CHECK_THROWS_AS(vf_bracket(f, wrong), DimensionError);
}

TEST_CASE("vf_bracket Jacobi identity on random fields") {
  std::mt19937 rng(99);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 8; ++trial) {
      PolyVectorField a = random_field(d, 3, rng);
      PolyVectorField b = random_field(d, 3, rng);
      PolyVectorField c = random_field(d, 3, rng);
      PolyVectorField residual =
          vf_bracket(a, vf_bracket(b, c)) +
          vf_bracket(c, vf_bracket(a, b)) +
          vf_bracket(b, vf_bracket(c, a));
      CHECK(residual.is_zero());
    }
  }
}

TEST_CASE("system construction enforces the equilibrium") {
  PolyVectorField f0(2);
  f0.component(0) = Poly::constant(2, rat(1));
  CHECK_THROWS_AS(PolySystem(f0, PolyVectorField(2), PolyVectorField(2)),
                  InvalidParamsError);
}

TEST_CASE("evaluated brackets on the toy quadratic system") {
  HallBasis basis(6);
  PolySystem sys = corpus::jouet(rat(7, 3));
  LieEvaluator ev(sys, basis);

  CHECK(ev.at_zero(basis.family(FamilyKind::W1, 1)) == unit_vec(3, 3, rat(2)));
  CHECK(ev.at_zero(basis.family(FamilyKind::W2, 1)) == unit_vec(3, 3, rat(2)));
  CHECK(ev.at_zero(basis.family(FamilyKind::C, 1)) == unit_vec(3, 3, rat(7, 3)));

  // Constant controlled fields kill [X1, X2] identically.
  CHECK(ev.evaluate_bracket(basis.family(FamilyKind::C, 0)).is_zero());

  // Zero element evaluates to the zero field.
  CHECK(ev.evaluate(freelie::LieElement()).is_zero());
}

TEST_CASE("evaluated brackets on the bundled corpus") {
  HallBasis basis(7);

  PolySystem complexe = corpus::excomplexe();
  LieEvaluator ev(complexe, basis);
  CHECK(ev.at_zero(basis.family(FamilyKind::W1, 1)) == unit_vec(4, 4, rat(2)));
  CHECK(ev.at_zero(basis.family(FamilyKind::W2, 1)) == unit_vec(4, 4, rat(4)));
  CHECK(ev.at_zero(basis.family(FamilyKind::C, 1)) == unit_vec(4, 4, rat(1, 2)));
  for (int l = 0; l <= 5; ++l)
    CHECK(vec_is_zero(ev.at_zero(basis.family(FamilyKind::C, 0, l))));

  PolySystem ff = corpus::exf1f2();
  LieEvaluator evf(ff, basis);
  CHECK(evf.at_zero(basis.family(FamilyKind::C, 0)) == unit_vec(5, 3));
  CHECK(evf.at_zero(basis.family(FamilyKind::C, 0, 1)) == unit_vec(5, 4));
  CHECK(evf.at_zero(basis.family(FamilyKind::C, 0, 2)) == unit_vec(5, 5));
  CHECK(evf.at_zero(basis.family(FamilyKind::W1, 1)) == unit_vec(5, 5));
  CHECK(evf.at_zero(basis.family(FamilyKind::W2, 1)) == unit_vec(5, 5));

  PolySystem chain = corpus::exintegrateur(rat(1));
  LieEvaluator evc(chain, basis);
  CHECK(evc.at_zero(basis.family(FamilyKind::W1, 2)) == unit_vec(4, 4, rat(2)));
  CHECK(evc.at_zero(basis.family(FamilyKind::W2, 1)) == unit_vec(4, 4, rat(2)));
  CHECK(evc.at_zero(basis.family(FamilyKind::C, 2)) == unit_vec(4, 4, rat(1)));
  CHECK(vec_is_zero(evc.at_zero(basis.family(FamilyKind::C, 1))));
}

TEST_CASE("evaluation is a Lie algebra homomorphism through normalize") {
  HallBasis basis(6);
  std::mt19937 rng(31337);
  for (const PolySystem& sys :
       {corpus::jouet(rat(1)), corpus::exf1f2(), corpus::exassym()}) {
    LieEvaluator ev(sys, basis);
    std::uniform_int_distribution<int> pick(0, basis.size() - 1);
    int done = 0;
    while (done < 40) {
      Bracket a = basis.member(pick(rng));
      Bracket b = basis.member(pick(rng));
      if (a == b || a->length + b->length > 6) continue;
      ++done;
      Bracket pair = basis.pool().pair(a, b);
      PolyVectorField direct =
          vf_bracket(ev.evaluate_bracket(a), ev.evaluate_bracket(b));
      PolyVectorField through_basis = ev.evaluate(basis.normalize(pair));
      CHECK(direct == through_basis);
    }
  }
}

TEST_CASE("explicit nested bracket matches its field expression") {
  HallBasis basis(6);
  PolySystem sys = corpus::exf1f2();
  LieEvaluator ev(sys, basis);
  Bracket b = freelie::parse_bracket(basis.pool(), "(((X1,X2),X0),(X1,X0))");
  PolyVectorField lhs = ev.evaluate_bracket(b);
  const PolyVectorField& f0 = sys.f0();
  const PolyVectorField& f1 = sys.f1();
  const PolyVectorField& f2 = sys.f2();
  PolyVectorField rhs =
      vf_bracket(vf_bracket(vf_bracket(f1, f2), f0), vf_bracket(f1, f0));
  CHECK(lhs == rhs);
}

TEST_CASE("nilpotency horizon") {
  HallBasis basis(8);

  LieEvaluator jouet_ev(corpus::jouet(rat(1)), basis);
  CHECK(jouet_ev.nilpotency_horizon(8) == 4);

  // Linear drift with a nilpotent matrix of index 3: horizon <= 5.
  const int d = 3;
  PolyVectorField f0(d);
  f0.component(1) = Poly::variable(d, 1);
  f0.component(2) = Poly::variable(d, 2);
  PolySystem linear(f0, PolyVectorField::basis_vector(d, 1),
                    PolyVectorField::basis_vector(d, 2));
  LieEvaluator lin_ev(linear, basis);
  auto h = lin_ev.nilpotency_horizon(8);
  REQUIRE(h.has_value());
  CHECK(*h <= 5);

  // No drift, constant controlled fields: everything of length 2 vanishes.
  PolySystem flat(PolyVectorField(d), PolyVectorField::basis_vector(d, 1),
                  PolyVectorField::basis_vector(d, 2));
  LieEvaluator flat_ev(flat, basis);
  CHECK(flat_ev.nilpotency_horizon(8) == 2);

  // A system that never becomes nilpotent within the cap.
  PolyVectorField g0(2);
  g0.component(0) = Poly::variable(2, 1) * Poly::variable(2, 1);
  PolySystem stubborn(g0, PolyVectorField::basis_vector(2, 1),
                      PolyVectorField::basis_vector(2, 2));
  LieEvaluator stubborn_ev(stubborn, basis);
  CHECK_FALSE(stubborn_ev.nilpotency_horizon(8).has_value());
}

TEST_CASE("obstruction spans") {
  HallBasis basis(8);

  LieEvaluator ev(corpus::jouet(rat(1)), basis);
  auto sym = freelie::ObstructionParams::symmetric(1, 1);
  SpanResult s = ev.obstruction_span(sym, 8);
  CHECK_FALSE(s.truncated);
  CHECK(s.span.rank() == 2);
  CHECK(s.span.contains(unit_vec(3, 1)));
  CHECK(s.span.contains(unit_vec(3, 2)));
  CHECK_FALSE(s.span.contains(unit_vec(3, 3)));

  // Monotone in the cap and stable past the horizon.
  SpanResult s2 = ev.obstruction_span(sym, 2);
  CHECK(s2.truncated);
  for (const auto& row : s2.span.rows()) CHECK(s.span.contains(row));
  SpanResult s3 = ev.obstruction_span(sym, 5);
  CHECK(s3.span == s.span);

  // With m >= 2 the compensating set keeps only degree-1 brackets, whose
  // evaluations span the first three directions.
  LieEvaluator evc(corpus::excomplexe(), basis);
  SpanResult sc = evc.obstruction_span(freelie::ObstructionParams::symmetric(1, 2), 8);
  CHECK_FALSE(sc.truncated);
  CHECK(sc.span.rank() == 3);
  CHECK(sc.span.contains(unit_vec(4, 3)));
  CHECK_FALSE(sc.span.contains(unit_vec(4, 4)));
  // At m = 1 the n = 3 bracket [X1,[X1,X2]] evaluates to -1286 e4, so the
  // span fills the whole space.
  Bracket uuv = freelie::parse_bracket(basis.pool(), "(X1,(X1,X2))");
  CHECK(evc.at_zero(uuv) == unit_vec(4, 4, rat(-1286)));
  CHECK(evc.obstruction_span(sym, 8).span.rank() == 4);

  // Degenerate system where every obstruction bracket vanishes at zero.
  const int d = 2;
  PolyVectorField f1(d), f2(d);
  f1.component(0) = Poly::variable(d, 1);
  f2.component(1) = Poly::variable(d, 2);
  PolySystem degenerate(PolyVectorField(d), f1, f2);
  LieEvaluator dev(degenerate, basis);
  CHECK(dev.obstruction_span(sym, 6).span.rank() == 0);
}

TEST_CASE("quotient images") {
  RationalSubspace n(3);
  n.insert(unit_vec(3, 1));
  n.insert(unit_vec(3, 2));

  CHECK(vec_is_zero(n.quotient_image(unit_vec(3, 1, rat(5)))));
  RatVec img = n.quotient_image(unit_vec(3, 3, rat(2)));
  REQUIRE(img.size() == 1);
  CHECK(img[0] == rat(2));
  img = n.quotient_image(unit_vec(3, 3, rat(7, 5)));
  CHECK(img[0] == rat(7, 5));
}

TEST_CASE("solver finds exact solutions") {
  std::vector<RatVec> a = {{rat(1), rat(2)}, {rat(3), rat(4)}};
  auto x = solve_linear(a, {rat(5), rat(6)});
  REQUIRE(x.has_value());
  CHECK(dot(a[0], *x) == rat(5));
  CHECK(dot(a[1], *x) == rat(6));

  std::vector<RatVec> bad = {{rat(1), rat(1)}, {rat(2), rat(2)}};
  CHECK_FALSE(solve_linear(bad, {rat(1), rat(3)}).has_value());
  // Underdetermined systems get some solution.
  auto y = solve_linear({{rat(1), rat(1), rat(0)}}, {rat(2)});
  REQUIRE(y.has_value());
  CHECK(dot(RatVec{rat(1), rat(1), rat(0)}, *y) == rat(2));
}

TEST_CASE("independence ranks behind the certified spans") {
  HallBasis basis(6);

  // Toy system: (f1(0), f2(0)) spans two directions.
  LieEvaluator ev(corpus::jouet(rat(1)), basis);
  RationalSubspace span(3);
  span.insert(ev.at_zero(basis.family(FamilyKind::M1, 0)));
  span.insert(ev.at_zero(basis.family(FamilyKind::M2, 0)));
  CHECK(span.rank() == 2);

  // Integrator chain with k = 2, k' = 1.
  LieEvaluator evc(corpus::exintegrateur(rat(1)), basis);
  RationalSubspace span2(4);
  span2.insert(evc.at_zero(basis.family(FamilyKind::M1, 0)));
  span2.insert(evc.at_zero(basis.family(FamilyKind::M1, 1)));
  span2.insert(evc.at_zero(basis.family(FamilyKind::M2, 0)));
  CHECK(span2.rank() == 3);
}

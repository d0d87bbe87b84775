#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stlc/corpus.hpp"
#include "stlc/errors.hpp"
#include "stlc/obstruction.hpp"

using namespace stlc;
using namespace stlc::fields;
using namespace stlc::obstruction;
using freelie::FamilyKind;
using freelie::HallBasis;

namespace {

RatVec unit_vec(int dim, int index, const Rat& scale = Rat(1)) {
  RatVec v(dim, Rat(0));
  v[index - 1] = scale;
  return v;
}

Rat random_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  return rat(num(rng), den(rng));
}

RatVec random_vec(int d, std::mt19937& rng) {
  RatVec v(d);
  for (Rat& x : v) x = random_rat(rng);
  return v;
}

// Brute-force witness search over a rational grid of forms on the quotient
// coordinates. Finding any form with P(e3)^2 < P(e1) P(e2) certifies the
// bracket condition.
bool grid_search_finds_witness(const BcInput& in) {
  RatVec q1 = in.n.quotient_image(in.e1);
  RatVec q2 = in.n.quotient_image(in.e2);
  RatVec q3 = in.n.quotient_image(in.e3);
  const int q = static_cast<int>(q1.size());
  if (q == 0) return false;
  const std::vector<Rat> values = {rat(-2), rat(-1), rat(-1, 2), rat(0),
                                   rat(1, 2), rat(1), rat(2)};
  std::vector<int> idx(q, 0);
  while (true) {
    Rat p1(0), p2(0), p3(0);
    for (int j = 0; j < q; ++j) {
      p1 += values[idx[j]] * q1[j];
      p2 += values[idx[j]] * q2[j];
      p3 += values[idx[j]] * q3[j];
    }
    if (p3 * p3 < p1 * p2) return true;
    int j = 0;
    while (j < q && ++idx[j] == static_cast<int>(values.size())) {
      idx[j] = 0;
      ++j;
    }
    if (j == q) return false;
  }
}

void check_valid_witness(const BcInput& in, const RatVec& p) {
  for (const RatVec& row : in.n.rows()) CHECK(is_zero(dot(p, row)));
  Rat p1 = dot(p, in.e1), p2 = dot(p, in.e2), p3 = dot(p, in.e3);
  CHECK(sgn(p1) > 0);
  CHECK(sgn(p2) > 0);
  CHECK(p3 * p3 < p1 * p2);
  CHECK(quadratic_form_pd(p1, p2, p3));
}

}  // namespace

TEST_CASE("quadratic form positive definiteness") {
  CHECK(quadratic_form_pd(rat(1), rat(1), rat(0)));
  CHECK_FALSE(quadratic_form_pd(rat(1), rat(1), rat(1)));  // gamma^2 = ab
  CHECK_FALSE(quadratic_form_pd(rat(-1), rat(-1), rat(0)));
  CHECK(quadratic_form_pd(rat(2), rat(3), rat(-2)));
}

TEST_CASE("bc classification on the toy quadratic data") {
  // Quotient data e1~ = e2~ = 2, e3~ = alpha on the third coordinate.
  auto make = [](const Rat& alpha) {
    RationalSubspace n(3);
    n.insert(unit_vec(3, 1));
    n.insert(unit_vec(3, 2));
    return BcInput{unit_vec(3, 3, rat(2)), unit_vec(3, 3, rat(2)),
                   unit_vec(3, 3, alpha), n};
  };

  for (const Rat& alpha : {rat(0), rat(1), rat(-1), rat(3, 2), rat(-3, 2),
                           rat(199, 100), rat(-199, 100)}) {
    BcOutcome out = bc_classify(make(alpha));
    CHECK(out.holds);
    REQUIRE(out.witness.has_value());
    CHECK(*out.witness == unit_vec(3, 3));
    check_valid_witness(make(alpha), *out.witness);
  }
  for (const Rat& alpha : {rat(2), rat(-2), rat(3), rat(-3)}) {
    BcOutcome out = bc_classify(make(alpha));
    CHECK_FALSE(out.holds);
    REQUIRE(out.blocking_case.has_value());
    CHECK(*out.blocking_case == BlockingCase::RatioDominatedBySquare);
    CHECK(*out.param_a == rat(1));            // beta
    CHECK(*out.param_b == alpha / rat(2));    // gamma
  }

  // Zero image.
  BcInput zero = make(rat(0));
  zero.e1 = RatVec(3, Rat(0));
  BcOutcome out = bc_classify(zero);
  CHECK_FALSE(out.holds);
  CHECK(*out.blocking_case == BlockingCase::ZeroImage);

  // Degenerate quotient: everything reduces to zero.
  RationalSubspace full(2);
  full.insert({rat(1), rat(0)});
  full.insert({rat(0), rat(1)});
  out = bc_classify({{rat(1), rat(0)}, {rat(0), rat(1)}, {rat(1), rat(1)}, full});
  CHECK(*out.blocking_case == BlockingCase::ZeroImage);
}

TEST_CASE("bc classification: independent pair branches") {
  RationalSubspace n0(3);

  // e3 = a e1 + b e2 with a b >= 1/4 blocks.
  BcInput blocked{unit_vec(3, 1), unit_vec(3, 2),
                  vec_add(unit_vec(3, 1, rat(1, 2)), unit_vec(3, 2, rat(1, 2))),
                  n0};
  BcOutcome out = bc_classify(blocked);
  CHECK_FALSE(out.holds);
  CHECK(*out.blocking_case == BlockingCase::IndependentHighCross);
  CHECK(*out.param_a == rat(1, 2));
  CHECK(*out.param_b == rat(1, 2));

  // a b < 1/4 with a != 0.
  BcInput ok{unit_vec(3, 1), unit_vec(3, 2),
             vec_add(unit_vec(3, 1, rat(1, 8)), unit_vec(3, 2, rat(1))), n0};
  out = bc_classify(ok);
  CHECK(out.holds);
  check_valid_witness(ok, *out.witness);

  // a = 0.
  BcInput a0{unit_vec(3, 1), unit_vec(3, 2), unit_vec(3, 2, rat(5)), n0};
  out = bc_classify(a0);
  CHECK(out.holds);
  check_valid_witness(a0, *out.witness);

  // Triple independent.
  BcInput tri{unit_vec(3, 1), unit_vec(3, 2), unit_vec(3, 3), n0};
  out = bc_classify(tri);
  CHECK(out.holds);
  check_valid_witness(tri, *out.witness);

  // Negative ratio.
  BcInput neg{unit_vec(3, 1), unit_vec(3, 1, rat(-2)), unit_vec(3, 3), n0};
  out = bc_classify(neg);
  CHECK_FALSE(out.holds);
  CHECK(*out.blocking_case == BlockingCase::NegativeRatio);
  CHECK(*out.param_a == rat(-2));

  // Positive ratio but independent third vector.
  BcInput posind{unit_vec(3, 1), unit_vec(3, 1, rat(3)), unit_vec(3, 2), n0};
  out = bc_classify(posind);
  CHECK(out.holds);
  check_valid_witness(posind, *out.witness);
}

TEST_CASE("bc classification agrees with brute-force grid search") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> dim_pick(2, 5);
  int holds_count = 0, grid_hits = 0;
  bool saw_case[4] = {false, false, false, false};

  for (int trial = 0; trial < 1000; ++trial) {
    const int d = dim_pick(rng);
    RationalSubspace n(d);
    const int min_rank = std::max(0, d - 3);
    std::uniform_int_distribution<int> rank_pick(min_rank, d - 1);
    const int target_rank = rank_pick(rng);
    int guard = 0;
    while (n.rank() < target_rank && guard++ < 20) n.insert(random_vec(d, rng));

    RatVec e1 = random_vec(d, rng);
    RatVec e2 = random_vec(d, rng);
    RatVec e3 = random_vec(d, rng);
    // Bias toward the degenerate branches.
    std::uniform_int_distribution<int> mode(0, 3);
    switch (mode(rng)) {
      case 1:
        e2 = vec_scale(e1, random_rat(rng));
        break;
      case 2:
        e2 = vec_scale(e1, random_rat(rng));
        e3 = vec_scale(e1, random_rat(rng));
        break;
      case 3:
        e3 = vec_add(vec_scale(e1, random_rat(rng)),
                     vec_scale(e2, random_rat(rng)));
        break;
      default:
        break;
    }

    BcInput in{e1, e2, e3, n};
    BcOutcome out = bc_classify(in);
    if (out.holds) {
      ++holds_count;
      REQUIRE(out.witness.has_value());
      check_valid_witness(in, *out.witness);
    } else {
      saw_case[static_cast<int>(*out.blocking_case)] = true;
    }
    if (grid_search_finds_witness(in)) {
      ++grid_hits;
      CHECK(out.holds);
    }

    // Scaling invariance under a common positive factor.
    BcInput scaled{vec_scale(e1, rat(3, 2)), vec_scale(e2, rat(3, 2)),
                   vec_scale(e3, rat(3, 2)), n};
    BcOutcome sout = bc_classify(scaled);
    CHECK(sout.holds == out.holds);
    if (!out.holds) CHECK(*sout.blocking_case == *out.blocking_case);
  }
  CHECK(holds_count > 100);
  CHECK(grid_hits > 50);
  for (bool seen : saw_case) CHECK(seen);
}

TEST_CASE("symmetric verdicts on the corpus") {
  HallBasis basis(8);

  PolySystem sys = corpus::jouet(rat(1));
  LieEvaluator ev(sys, basis);
  ObstructionVerdict v = stlc_verdict_symmetric(ev, 1, 1, 8);
  CHECK(v.outcome == VerdictOutcome::Obstruction);
  CHECK_FALSE(v.truncated);
  REQUIRE(v.bc.witness.has_value());
  CHECK(*v.bc.witness == unit_vec(3, 3));
  CHECK(*v.drift_direction == unit_vec(3, 3, rat(4)));
  CHECK(v.regime_exponent == rat(1, 2));

  LieEvaluator ev2(corpus::jouet(rat(2)), basis);
  v = stlc_verdict_symmetric(ev2, 1, 1, 8);
  CHECK(v.outcome == VerdictOutcome::Inconclusive);
  CHECK(*v.bc.blocking_case == BlockingCase::RatioDominatedBySquare);

  LieEvaluator evq(corpus::exquartic(), basis);
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 2; ++m) {
      v = stlc_verdict_symmetric(evq, k, m, 8);
      CHECK(v.outcome == VerdictOutcome::Inconclusive);
      CHECK(*v.bc.blocking_case == BlockingCase::ZeroImage);
    }

  LieEvaluator eva(corpus::exassym(), basis);
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 2; ++m)
      CHECK(stlc_verdict_symmetric(eva, k, m, 8).outcome ==
            VerdictOutcome::Inconclusive);

  LieEvaluator evf(corpus::exf1f2(), basis);
  for (int k = 1; k <= 2; ++k)
    for (int m = 1; m <= 2; ++m)
      CHECK(stlc_verdict_symmetric(evf, k, m, 8).outcome ==
            VerdictOutcome::Inconclusive);

  CHECK_THROWS_AS(stlc_verdict_symmetric(ev, 1, 1, 2), InvalidParamsError);
}

TEST_CASE("asymmetric verdicts") {
  HallBasis basis(8);

  LieEvaluator eva(corpus::exassym(), basis);
  ObstructionVerdict v = stlc_verdict_asymmetric(eva, 2, 1, 1, 1, 8);
  CHECK(v.outcome == VerdictOutcome::Obstruction);
  CHECK(*v.drift_direction == unit_vec(4, 4, rat(4)));
  CHECK(v.regime_exponent == rat(1, 4));          // (5 - 4) / (5 - 1)
  CHECK(*v.regime_exponent_prime == rat(1, 2));   // (3 - 2) / (3 - 1)

  LieEvaluator evi(corpus::exintegrateur(rat(1)), basis);
  v = stlc_verdict_asymmetric(evi, 2, 1, 1, 1, 8);
  CHECK(v.outcome == VerdictOutcome::Obstruction);
  CHECK(*v.drift_direction == unit_vec(4, 4, rat(4)));
  REQUIRE(v.bc.witness.has_value());
  CHECK(*v.bc.witness == unit_vec(4, 4));

  LieEvaluator evi3(corpus::exintegrateur(rat(3)), basis);
  v = stlc_verdict_asymmetric(evi3, 2, 1, 1, 1, 8);
  CHECK(v.outcome == VerdictOutcome::Inconclusive);

  // k' = k, m' = m coincides with the symmetric verdict.
  for (const Rat& alpha : {rat(0), rat(1), rat(5, 2)}) {
    LieEvaluator e1(corpus::jouet(alpha), basis);
    ObstructionVerdict sym = stlc_verdict_symmetric(e1, 1, 1, 8);
    ObstructionVerdict asym = stlc_verdict_asymmetric(e1, 1, 1, 1, 1, 8);
    CHECK(sym.outcome == asym.outcome);
    CHECK(sym.bc.holds == asym.bc.holds);
    if (sym.bc.witness) CHECK(*sym.bc.witness == *asym.bc.witness);
  }

  CHECK_THROWS_AS(stlc_verdict_asymmetric(eva, 1, 2, 1, 1, 8),
                  InvalidParamsError);
}

TEST_CASE("obstruction witness annihilates the span") {
  HallBasis basis(8);
  LieEvaluator ev(corpus::jouet(rat(1)), basis);
  ObstructionVerdict v = stlc_verdict_symmetric(ev, 1, 1, 8);
  auto span = ev.obstruction_span(v.params, 8);
  for (const RatVec& row : span.span.rows())
    CHECK(is_zero(dot(*v.bc.witness, row)));
}

TEST_CASE("swap-symmetrized span check") {
  HallBasis basis(8);

  LieEvaluator ev(corpus::jouet(rat(1)), basis);
  freelie::Bracket w11 = basis.family(FamilyKind::W1, 1);
  for (const Rat& theta : {rat(0), rat(1, 2), rat(1)}) {
    SthetaResult r = sussmann_stheta_check(ev, theta, w11, 4);
    CHECK_FALSE(r.in_span);
    CHECK_FALSE(r.bounded);  // the toy system is nilpotent within the cap
  }

  // Vanishing symmetrized image is always inside the span.
  LieEvaluator evq(corpus::exquartic(), basis);
  SthetaResult r = sussmann_stheta_check(evq, rat(1, 2), w11, 6);
  CHECK(r.in_span);

  // Parity preconditions.
  CHECK_THROWS_AS(
      sussmann_stheta_check(ev, rat(0), basis.family(FamilyKind::C, 0), 4),
      InvalidParamsError);
  CHECK_THROWS_AS(sussmann_stheta_check(ev, rat(2), w11, 4),
                  InvalidParamsError);
}

TEST_CASE("linear inequality solver") {
  // x <= 2, -x <= -1  ->  1 <= x <= 2.
  auto x = solve_inequalities({{rat(1)}, {rat(-1)}}, {rat(2), rat(-1)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] >= rat(1));
  CHECK((*x)[0] <= rat(2));

  // Infeasible.
  CHECK_FALSE(
      solve_inequalities({{rat(1)}, {rat(-1)}}, {rat(1), rat(-2)}).has_value());

  // Two variables: x + y <= 1, -x <= 0, -y <= 0, -x - y <= -1 (tight).
  auto z = solve_inequalities(
      {{rat(1), rat(1)}, {rat(-1), rat(0)}, {rat(0), rat(-1)},
       {rat(-1), rat(-1)}},
      {rat(1), rat(0), rat(0), rat(-1)});
  REQUIRE(z.has_value());
  CHECK((*z)[0] + (*z)[1] == rat(1));
  CHECK(sgn((*z)[0]) >= 0);
  CHECK(sgn((*z)[1]) >= 0);
}

TEST_CASE("quartic variant check") {
  // Bundled quartic example: pure fourth powers drive the third coordinate.
  HallBasis basis(6);
  LieEvaluator ev(corpus::exquartic(), basis);
  {
    freelie::BracketPool& pool = basis.pool();
    std::array<RatVec, 5> e;
    for (int i = 0; i <= 4; ++i) {
      freelie::Bracket inner = pool.x0();
      for (int j = 0; j < 4 - i; ++j) inner = pool.pair(pool.x1(), inner);
      for (int j = 0; j < i; ++j) inner = pool.pair(pool.x2(), inner);
      e[i] = ev.at_zero(basis.normalize(inner));
    }
    CHECK(e[0] == unit_vec(3, 3, rat(24)));
    CHECK(e[4] == unit_vec(3, 3, rat(24)));
    CHECK(vec_is_zero(e[1]));
    CHECK(vec_is_zero(e[2]));
    CHECK(vec_is_zero(e[3]));

    RationalSubspace n(3);
    n.insert(unit_vec(3, 1));
    n.insert(unit_vec(3, 2));
    QuarticOutcome out = quartic_bc_check(e, n);
    CHECK(out.holds);
    REQUIRE(out.witness.has_value());
    CHECK(*out.witness == unit_vec(3, 3));
  }

  // All zero data cannot produce P(e0) > 0.
  std::array<RatVec, 5> zeros;
  zeros.fill(RatVec(3, Rat(0)));
  RationalSubspace trivial(3);
  CHECK_FALSE(quartic_bc_check(zeros, trivial).holds);

  // Sign clash: P(e_d) must be > 0 and <= 0 at once.
  std::array<RatVec, 5> clash;
  clash[0] = unit_vec(3, 3);
  clash[1] = RatVec(3, Rat(0));
  clash[2] = unit_vec(3, 3, rat(-1));
  clash[3] = RatVec(3, Rat(0));
  clash[4] = unit_vec(3, 3);
  CHECK_FALSE(quartic_bc_check(clash, trivial).holds);
}

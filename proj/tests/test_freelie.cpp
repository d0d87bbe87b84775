#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stlc/errors.hpp"
#include "stlc/hall.hpp"

using namespace stlc;
using namespace stlc::freelie;

namespace {

// Witt (necklace) formula over 3 generators: dim_n = (1/n) sum_{d|n} mu(d) 3^{n/d}.
int moebius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

long witt_dim(int n) {
  long total = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    long p = 1;
    for (int i = 0; i < n / d; ++i) p *= 3;
    total += moebius(d) * p;
  }
  return total / n;
}

Rat random_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  return rat(num(rng), den(rng));
}

LieElement random_element(const HallBasis& basis, int max_len,
                          std::mt19937& rng) {
  std::vector<int> pool;
  for (int r = 0; r < basis.size(); ++r)
    if (basis.member(r)->length <= max_len) pool.push_back(r);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  LieElement e;
  for (int i = 0; i < 3; ++i)
    e.add_scaled(LieElement::unit(pool[pick(rng)]), random_rat(rng));
  return e;
}

}  // namespace

TEST_CASE("hall basis generators and small layers") {
  HallBasis b1(1);
  CHECK(b1.size() == 3);
  CHECK(b1.layer_dims() == std::vector<int>{3});

  HallBasis b2(2);
  auto len2 = b2.members_of_length(2);
  REQUIRE(len2.size() == 3);
  std::vector<std::string> names;
  for (Bracket b : len2) names.push_back(to_string(b));
  CHECK(names == std::vector<std::string>{"(X1,X0)", "(X2,X0)", "(X1,X2)"});
}

TEST_CASE("hall basis layer dimensions match the Witt formula") {
  HallBasis basis(6);
  auto dims = basis.layer_dims();
  REQUIRE(dims.size() == 6);
  CHECK(dims == std::vector<int>{3, 3, 8, 18, 48, 116});
  for (int n = 1; n <= 6; ++n) CHECK(dims[n - 1] == witt_dim(n));
}

TEST_CASE("capacity cap") {
  CHECK_THROWS_AS(HallBasis(11), CapacityError);
  // The n <= 2 slice is allowed to go long.
  HallBasis slice(16, 2);
  CHECK(slice.size() > 0);
}

TEST_CASE("dump format golden") {
  HallBasis basis(2);
  CHECK(basis.dump() == "X1\nX2\n(X1,X0)\n(X2,X0)\n(X1,X2)\nX0\n");
}

TEST_CASE("counts") {
  HallBasis basis(8);
  BracketPool& pool = basis.pool();

  Bracket b = parse_bracket(pool, "(((X1,(X0,X2)),X2),(X1,X2))");
  Counts c = counts(b);
  CHECK(c.length == 6);
  CHECK(c.n0 == 1);
  CHECK(c.n1 == 2);
  CHECK(c.n2 == 3);

  c = counts(pool.x0());
  CHECK(c.length == 1);
  CHECK(c.n0 == 1);
  CHECK(c.n1 == 0);
  CHECK(c.n2 == 0);

  c = counts(basis.family(FamilyKind::W1, 2, 3));
  CHECK(c.length == 8);
  CHECK(c.n0 == 6);
  CHECK(c.n1 == 2);
  CHECK(c.n2 == 0);
}

TEST_CASE("bracket integration b0^nu") {
  HallBasis basis(4);
  BracketPool& pool = basis.pool();
  Bracket b = parse_bracket(pool, "((X1,X2),(X0,X2))");
  CHECK(to_string(pool.bracket_int(b, 2)) == "((((X1,X2),(X0,X2)),X0),X0)");
  CHECK(pool.bracket_int(b, 0) == b);
  CHECK(pool.bracket_int(pool.x1(), 3) == basis.family(FamilyKind::M1, 3));
}

TEST_CASE("named families") {
  HallBasis basis(4);
  CHECK(to_string(basis.family(FamilyKind::C, 0)) == "(X1,X2)");
  CHECK(to_string(basis.family(FamilyKind::W1, 1)) == "(X1,(X1,X0))");
  // Odd index swaps the pair.
  CHECK(to_string(basis.family(FamilyKind::C, 1)) == "(X2,(X1,X0))");
  CHECK_THROWS_AS(basis.family(FamilyKind::W1, 0), InvalidParamsError);

  // Every generated family element is a basis member.
  for (int j = 0; j <= 2; ++j)
    for (int l = 0; l <= 2; ++l) {
      CHECK(basis.is_member(basis.family(FamilyKind::C, j, l)) ==
            (j + l + 2 <= 4));
      if (j >= 1 && 2 * j + 1 + l <= 4) {
        CHECK(basis.is_member(basis.family(FamilyKind::W1, j, l)));
        CHECK(basis.is_member(basis.family(FamilyKind::W2, j, l)));
      }
    }
}

TEST_CASE("family recognition round trip") {
  HallBasis basis(7);
  int recognized = 0;
  for (Bracket b : basis.members()) {
    if (b->n() > 2) continue;
    if (b == basis.pool().x0()) continue;
    auto fam = basis.family_of(b);
    REQUIRE(fam.has_value());
    CHECK(basis.family(fam->kind, fam->j, fam->l) == b);
    ++recognized;
  }
  CHECK(recognized > 20);
}

TEST_CASE("normalize") {
  HallBasis basis(6);
  BracketPool& pool = basis.pool();

  CHECK(basis.normalize(pool.pair(pool.x1(), pool.x1())).is_zero());

  LieElement e = basis.normalize(pool.pair(pool.x2(), pool.x1()));
  int c0 = *basis.rank_of(basis.family(FamilyKind::C, 0));
  CHECK(e.terms().size() == 1);
  CHECK(e.coefficient(c0) == rat(-1));

  e = basis.normalize(parse_bracket(pool, "(X0,(X1,X2))"));
  int c01 = *basis.rank_of(basis.family(FamilyKind::C, 0, 1));
  CHECK(e.terms().size() == 1);
  CHECK(e.coefficient(c01) == rat(-1));

  // Idempotent on members.
  for (Bracket b : basis.members()) {
    LieElement u = basis.normalize(b);
    CHECK(u.terms().size() == 1);
    CHECK(u.coefficient(*basis.rank_of(b)) == rat(1));
  }
}

TEST_CASE("lie bracket properties") {
  HallBasis basis(9);
  BracketPool& pool = basis.pool();

  LieElement x1 = basis.normalize(pool.x1());
  LieElement x2 = basis.normalize(pool.x2());
  LieElement c0 = basis.lie_bracket(x1, x2);
  CHECK(c0 == LieElement::unit(*basis.rank_of(basis.family(FamilyKind::C, 0))));

  std::mt19937 rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    LieElement a = random_element(basis, 3, rng);
    LieElement b = random_element(basis, 3, rng);
    LieElement c = random_element(basis, 3, rng);

    CHECK(basis.lie_bracket(a, a).is_zero());
    LieElement anti = basis.lie_bracket(a, b) + basis.lie_bracket(b, a);
    CHECK(anti.is_zero());

    LieElement jacobi = basis.lie_bracket(a, basis.lie_bracket(b, c));
    jacobi.add_scaled(basis.lie_bracket(c, basis.lie_bracket(a, b)), Rat(1));
    jacobi.add_scaled(basis.lie_bracket(b, basis.lie_bracket(c, a)), Rat(1));
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("generator swap") {
  HallBasis basis(8);
  BracketPool& pool = basis.pool();

  LieElement px0 = basis.swap_pi(basis.normalize(pool.x0()));
  CHECK(px0 == LieElement::unit(*basis.rank_of(pool.x0())));

  for (int k = 1; k <= 3; ++k) {
    LieElement s = basis.swap_sigma(basis.family(FamilyKind::W1, k));
    LieElement expected =
        LieElement::unit(*basis.rank_of(basis.family(FamilyKind::W1, k))) +
        LieElement::unit(*basis.rank_of(basis.family(FamilyKind::W2, k)));
    CHECK(s == expected);
  }

  CHECK(basis.swap_sigma(basis.family(FamilyKind::C, 0)).is_zero());
}

TEST_CASE("expansion coefficient base cases and leading term") {
  CHECK(expand_coefficients_gamma(0) == std::vector<long>{-1});
  CHECK(expand_coefficients_gamma(1) == std::vector<long>{0, 1});
  for (int nu = 0; nu <= 10; ++nu) {
    auto g = expand_coefficients_gamma(nu);
    REQUIRE(static_cast<int>(g.size()) == nu + 1);
    long expected = ((1 + (nu + 1) / 2) % 2 == 0) ? 1 : -1;
    CHECK(g[nu] == expected);
  }
}

TEST_CASE("expansion coefficients reproduce normalize") {
  // The n <= 2 slice reaches length 2p + 2 + nu.
  HallBasis basis(18, 2);

  for (int p = 0; p <= 3; ++p) {
    for (int nu = 0; nu <= 8; ++nu) {
      LieElement m2p = basis.normalize(basis.family(FamilyKind::M2, p));
      LieElement m1p_nu =
          basis.normalize(basis.family(FamilyKind::M1, p + nu));
      // gamma: [M^2_p, M^1_p 0^nu]
      LieElement lhs = basis.lie_bracket(m2p, m1p_nu);
      LieElement rhs;
      auto gamma = expand_coefficients_gamma(nu);
      for (int r = 0; r <= nu; ++r)
        rhs.add_scaled(
            basis.normalize(basis.family(FamilyKind::C, 2 * p + r, nu - r)),
            Rat(gamma[r]));
      CHECK(lhs == rhs);

      // beta: [M^1_p, M^2_p 0^nu]
      lhs = basis.lie_bracket(basis.normalize(basis.family(FamilyKind::M1, p)),
                              basis.normalize(basis.family(FamilyKind::M2, p + nu)));
      rhs = LieElement();
      auto beta = expand_coefficients_beta(nu);
      for (int r = 0; r <= nu; ++r)
        rhs.add_scaled(
            basis.normalize(basis.family(FamilyKind::C, 2 * p + r, nu - r)),
            Rat(beta[r]));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("alpha coefficients reproduce normalize") {
  HallBasis basis(16, 2);
  std::mt19937 rng(777);

  for (int nu = 1; nu <= 10; ++nu) {
    auto alpha = expand_coefficients_alpha(nu);
    REQUIRE(static_cast<int>(alpha.size()) == (nu - 1) / 2 + 1);

    // b = X1 turns the identity into a W-family statement.
    LieElement b = basis.normalize(basis.pool().x1());
    LieElement lhs = basis.lie_bracket(b, basis.bracket_int(b, nu));
    LieElement rhs;
    for (int r = 0; 2 * r + 1 <= nu; ++r)
      rhs.add_scaled(basis.normalize(basis.family(FamilyKind::W1, r + 1,
                                                  nu - 2 * r - 1)),
                     Rat(alpha[r]));
    CHECK(lhs == rhs);

    // Random degree-1 elements.
    if (nu <= 6) {
      for (int trial = 0; trial < 5; ++trial) {
        LieElement e;
        for (int j = 0; j <= 2; ++j) {
          e.add_scaled(basis.normalize(basis.family(FamilyKind::M1, j)),
                       random_rat(rng));
          e.add_scaled(basis.normalize(basis.family(FamilyKind::M2, j)),
                       random_rat(rng));
        }
        LieElement l = basis.lie_bracket(e, basis.bracket_int(e, nu));
        LieElement r;
        for (int rr = 0; 2 * rr + 1 <= nu; ++rr)
          r.add_scaled(
              basis.lie_bracket(basis.bracket_int(e, rr),
                                basis.bracket_int(e, rr + 1)),
              Rat(alpha[rr]));
        r = basis.bracket_int(r, 0);
        LieElement want;
        for (int rr = 0; 2 * rr + 1 <= nu; ++rr)
          want.add_scaled(
              basis.bracket_int(
                  basis.lie_bracket(basis.bracket_int(e, rr),
                                    basis.bracket_int(e, rr + 1)),
                  nu - 2 * rr - 1),
              Rat(alpha[rr]));
        CHECK(l == want);
      }
    }
  }
}

TEST_CASE("hall decomposition") {
  HallBasis basis(6);
  auto d = basis.hall_decompose(basis.family(FamilyKind::W1, 1));
  CHECK(d.b1 == basis.pool().x1());
  CHECK(d.b2 == basis.pool().x0());
  CHECK(d.m == 2);

  d = basis.hall_decompose(basis.family(FamilyKind::C, 0));
  CHECK(d.b1 == basis.pool().x1());
  CHECK(d.b2 == basis.pool().x2());
  CHECK(d.m == 1);

  for (int j = 1; j <= 4; ++j) {
    d = basis.hall_decompose(basis.family(FamilyKind::M1, j));
    CHECK(d.b1 == basis.family(FamilyKind::M1, j - 1));
    CHECK(d.b2 == basis.pool().x0());
    CHECK(d.m == 1);
  }

  CHECK_THROWS_AS(basis.hall_decompose(basis.pool().x1()), InvalidParamsError);

  // The decomposition exists within the basis for every composite member.
  for (Bracket b : basis.members()) {
    if (b->is_generator()) continue;
    auto dec = basis.hall_decompose(b);
    CHECK(basis.is_member(dec.b1));
    CHECK(basis.is_member(dec.b2));
    CHECK(bracket_less(dec.b1, dec.b2));
    Bracket rebuilt = dec.b2;
    for (int i = 0; i < dec.m; ++i) rebuilt = basis.pool().pair(dec.b1, rebuilt);
    CHECK(rebuilt == b);
  }
}

TEST_CASE("obstruction set membership") {
  HallBasis basis(8);
  auto sym = ObstructionParams::symmetric(1, 1);

  CHECK(basis.in_obstruction_set(basis.pool().x1(), sym));
  CHECK_FALSE(basis.in_obstruction_set(basis.family(FamilyKind::W1, 1), sym));
  CHECK(basis.in_obstruction_set(basis.family(FamilyKind::C, 0, 5), sym));
  CHECK_FALSE(basis.in_obstruction_set(basis.family(FamilyKind::C, 1), sym));
  CHECK_FALSE(basis.in_obstruction_set(basis.pool().x0(), sym));

  // k = 2: C_{j,l} allowed up to j = 2, W up to j = 1.
  auto sym2 = ObstructionParams::symmetric(2, 1);
  CHECK(basis.in_obstruction_set(basis.family(FamilyKind::C, 2, 1), sym2));
  CHECK_FALSE(basis.in_obstruction_set(basis.family(FamilyKind::C, 3), sym2));
  CHECK(basis.in_obstruction_set(basis.family(FamilyKind::W2, 1, 3), sym2));
  CHECK_FALSE(basis.in_obstruction_set(basis.family(FamilyKind::W1, 2), sym2));
  // n = 3 brackets are allowed up to pi(2, 1) = 5.
  Bracket n3 = basis.pool().pair(basis.pool().x1(),
                                 basis.family(FamilyKind::C, 0));
  CHECK(basis.in_obstruction_set(n3, sym2));

  // Asymmetric: k = 2, k' = 1 keeps W^2 out entirely and bounds n2.
  auto asym = ObstructionParams::asymmetric_params(2, 1, 1, 1);
  CHECK(basis.in_obstruction_set(basis.family(FamilyKind::W1, 1, 2), asym));
  CHECK_FALSE(basis.in_obstruction_set(basis.family(FamilyKind::W2, 1), asym));
  CHECK(basis.in_obstruction_set(basis.family(FamilyKind::C, 1, 4), asym));
  CHECK_FALSE(basis.in_obstruction_set(basis.family(FamilyKind::C, 2), asym));
  CHECK_THROWS_AS(
      basis.in_obstruction_set(basis.pool().x1(),
                               ObstructionParams::asymmetric_params(1, 2, 1, 1)),
      InvalidParamsError);
}

TEST_CASE("bracket relation: symmetric expansion stays in the set") {
  HallBasis basis(12, 2);
  std::mt19937 rng(4242);

  for (int k = 1; k <= 4; ++k) {
    for (int l = 0; l <= k - 1; ++l) {
      LieElement b;
      std::vector<Rat> a1(l + 1), a2(l + 1);
      for (int j = 0; j <= l; ++j) {
        a1[j] = random_rat(rng);
        a2[j] = random_rat(rng);
        b.add_scaled(basis.normalize(basis.family(FamilyKind::M1, j)), a1[j]);
        b.add_scaled(basis.normalize(basis.family(FamilyKind::M2, j)), a2[j]);
      }
      LieElement lhs = basis.lie_bracket(basis.bracket_int(b, k - l - 1),
                                         basis.bracket_int(b, k - l));
      lhs.add_scaled(basis.normalize(basis.family(FamilyKind::W1, k)),
                     -a1[l] * a1[l]);
      lhs.add_scaled(basis.normalize(basis.family(FamilyKind::W2, k)),
                     -a2[l] * a2[l]);
      lhs.add_scaled(basis.normalize(basis.family(FamilyKind::C, 2 * k - 1)),
                     -2 * a1[l] * a2[l]);
      auto params = ObstructionParams::symmetric(k, 1);
      for (int rank : lhs.support())
        CHECK(basis.in_obstruction_set(basis.member(rank), params));
    }
  }
}

TEST_CASE("bracket relation: asymmetric expansion stays in the set") {
  HallBasis basis(12, 2);
  std::mt19937 rng(999);

  for (int k = 2; k <= 4; ++k) {
    for (int kp = 1; kp < k; ++kp) {
      for (int l = 0; l <= kp - 1; ++l) {
        std::vector<Rat> alpha(l + k - kp + 1), beta(l + 1);
        LieElement b;
        for (int j = 0; j <= l + k - kp; ++j) {
          alpha[j] = random_rat(rng);
          b.add_scaled(basis.normalize(basis.family(FamilyKind::M1, j)),
                       alpha[j]);
        }
        for (int j = 0; j <= l; ++j) {
          beta[j] = random_rat(rng);
          b.add_scaled(basis.normalize(basis.family(FamilyKind::M2, j)),
                       beta[j]);
        }
        LieElement lhs = basis.lie_bracket(basis.bracket_int(b, kp - l - 1),
                                           basis.bracket_int(b, kp - l));
        lhs.add_scaled(basis.normalize(basis.family(FamilyKind::W1, k)),
                       -alpha[l + k - kp] * alpha[l + k - kp]);
        lhs.add_scaled(basis.normalize(basis.family(FamilyKind::W2, kp)),
                       -beta[l] * beta[l]);
        const Rat sign = ((k - kp) / 2) % 2 == 0 ? rat(2) : rat(-2);
        lhs.add_scaled(
            basis.normalize(basis.family(FamilyKind::C, k + kp - 1)),
            -sign * alpha[l + k - kp] * beta[l]);
        auto params = ObstructionParams::asymmetric_params(k, kp, 1, 1);
        for (int rank : lhs.support())
          CHECK(basis.in_obstruction_set(basis.member(rank), params));
      }
    }
  }
}

TEST_CASE("capacity cap override via the environment") {
  setenv("STLC_ORACLE_MAX_LEN", "11", 1);
  CHECK(HallBasis::default_cap() == 11);
  HallBasis wide(11);
  CHECK(wide.max_length() == 11);
  unsetenv("STLC_ORACLE_MAX_LEN");
  CHECK(HallBasis::default_cap() == 10);
}

TEST_CASE("basis too small is reported") {
  HallBasis basis(3);
  LieElement w = basis.normalize(basis.family(FamilyKind::W1, 1));
  LieElement m = basis.normalize(basis.family(FamilyKind::M1, 1));
  CHECK_THROWS_AS(basis.lie_bracket(w, m),
                  BasisTooSmallError);  // length 5 > 3
  CHECK_THROWS_AS(
      basis.normalize(basis.pool().bracket_int(basis.pool().x1(), 5)),
      BasisTooSmallError);
}

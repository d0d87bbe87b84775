#include "stlc/obstruction.hpp"

#include <algorithm>

#include "stlc/errors.hpp"

namespace stlc::obstruction {

using freelie::Bracket;
using freelie::FamilyKind;
using freelie::ObstructionParams;
using fields::dot;
using fields::solve_inequalities;
using fields::solve_linear;
using fields::vec_add;
using fields::vec_is_zero;
using fields::vec_scale;

std::string to_string(BlockingCase c) {
  switch (c) {
    case BlockingCase::ZeroImage: return "zero-image";
    case BlockingCase::IndependentHighCross: return "independent-high-cross";
    case BlockingCase::NegativeRatio: return "negative-ratio";
    case BlockingCase::RatioDominatedBySquare:
      return "ratio-dominated-by-square";
  }
  return "?";
}

bool quadratic_form_pd(const Rat& alpha, const Rat& beta, const Rat& gamma) {
  return sgn(alpha) > 0 && gamma * gamma < alpha * beta;
}

namespace {

// Scales so the first nonzero entry becomes +-1; only positive scalings
// preserve the witness inequalities.
RatVec normalize_witness(RatVec w) {
  for (const Rat& x : w) {
    if (!is_zero(x)) {
      Rat s = Rat(1) / rat_abs(x);
      for (Rat& y : w) y *= s;
      return w;
    }
  }
  return w;
}

// A form with prescribed values on the given vectors and zero on n.
RatVec solve_witness(const RationalSubspace& n,
                     const std::vector<RatVec>& vectors,
                     const std::vector<Rat>& values) {
  std::vector<RatVec> rows = n.rows();
  RatVec rhs(rows.size(), Rat(0));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    rows.push_back(vectors[i]);
    rhs.push_back(values[i]);
  }
  auto p = solve_linear(rows, rhs);
  if (!p) throw std::logic_error("witness system unexpectedly inconsistent");
  return normalize_witness(*p);
}

// e2 = beta e1 for nonzero e1? Exact proportionality test.
std::optional<Rat> proportional(const RatVec& e1, const RatVec& e2) {
  int lead = -1;
  for (std::size_t i = 0; i < e1.size(); ++i)
    if (!is_zero(e1[i])) {
      lead = static_cast<int>(i);
      break;
    }
  if (lead < 0) return std::nullopt;
  Rat beta = e2[lead] / e1[lead];
  for (std::size_t i = 0; i < e1.size(); ++i)
    if (e2[i] != beta * e1[i]) return std::nullopt;
  return beta;
}

void check_witness(const BcInput& in, const RatVec& p) {
  for (const RatVec& row : in.n.rows())
    if (!is_zero(dot(p, row)))
      throw std::logic_error("witness does not annihilate the subspace");
  Rat p1 = dot(p, in.e1), p2 = dot(p, in.e2), p3 = dot(p, in.e3);
  if (!(sgn(p1) > 0 && sgn(p2) > 0 && p3 * p3 < p1 * p2))
    throw std::logic_error("witness fails the defining inequalities");
}

}  // namespace

BcOutcome bc_classify(const BcInput& input) {
  const std::size_t d = input.e1.size();
  if (input.e2.size() != d || input.e3.size() != d ||
      input.n.ambient_dim() != static_cast<int>(d))
    throw DimensionError("bc_classify: dimension mismatch");

  BcOutcome out;
  RatVec q1 = input.n.reduce(input.e1);
  RatVec q2 = input.n.reduce(input.e2);
  RatVec q3 = input.n.reduce(input.e3);

  if (vec_is_zero(q1) || vec_is_zero(q2)) {
    out.blocking_case = BlockingCase::ZeroImage;
    return out;
  }

  auto finish = [&](const std::vector<RatVec>& vecs,
                    const std::vector<Rat>& vals) {
    out.holds = true;
    out.witness = solve_witness(input.n, vecs, vals);
    check_witness(input, *out.witness);
  };

  if (auto beta = proportional(q1, q2)) {
    if (sgn(*beta) < 0) {
      out.blocking_case = BlockingCase::NegativeRatio;
      out.param_a = *beta;
      return out;
    }
    if (auto gamma = proportional(q1, q3)) {
      if (*beta <= *gamma * *gamma) {
        out.blocking_case = BlockingCase::RatioDominatedBySquare;
        out.param_a = *beta;
        out.param_b = *gamma;
        return out;
      }
      // P(e1) = 1 forces P(e2) = beta > gamma^2 = P(e3)^2.
      finish({input.e1}, {Rat(1)});
      return out;
    }
    // (e1, e3) independent in the quotient: P(e1) = 1, P(e3) = 0.
    finish({input.e1, input.e3}, {Rat(1), Rat(0)});
    return out;
  }

  // (e1, e2) independent in the quotient. Decompose e3 if possible.
  std::vector<RatVec> rows;
  for (std::size_t j = 0; j < d; ++j) rows.push_back({q1[j], q2[j]});
  auto ab = solve_linear(rows, q3);
  if (!ab) {
    // Triple independent: P(e1) = P(e2) = 1, P(e3) = 0.
    finish({input.e1, input.e2, input.e3}, {Rat(1), Rat(1), Rat(0)});
    return out;
  }
  const Rat a = (*ab)[0], b = (*ab)[1];
  if (a * b >= rat(1, 4)) {
    out.blocking_case = BlockingCase::IndependentHighCross;
    out.param_a = a;
    out.param_b = b;
    return out;
  }
  if (is_zero(a)) {
    finish({input.e1, input.e2}, {b * b + 1, Rat(1)});
    return out;
  }
  const Rat x_star = (Rat(1) - 2 * a * b) / (2 * a * a);
  finish({input.e1, input.e2}, {x_star, Rat(1)});
  return out;
}

namespace {

ObstructionVerdict make_verdict(fields::LieEvaluator& ev,
                                const ObstructionParams& params,
                                int length_cap) {
  const freelie::HallBasis& basis = ev.basis();
  const int k = params.k;
  const int kp = params.asymmetric() ? *params.k_prime : k;
  const int mandatory = 2 * k + 1;
  if (length_cap < mandatory)
    throw InvalidParamsError("length cap " + std::to_string(length_cap) +
                             " below the bad-bracket length " +
                             std::to_string(mandatory));
  if (basis.max_length() < mandatory)
    throw BasisTooSmallError("basis does not reach the bad brackets");

  ObstructionVerdict v;
  v.params = params;
  fields::SpanResult span = ev.obstruction_span(params, length_cap);
  v.truncated = span.truncated;
  v.horizon = span.horizon;
  v.e1 = ev.at_zero(basis.family(FamilyKind::W1, k));
  v.e2 = ev.at_zero(basis.family(FamilyKind::W2, kp));
  v.e3 = ev.at_zero(basis.family(FamilyKind::C, k + kp - 1));
  v.bc = bc_classify({v.e1, v.e2, v.e3, span.span});

  const int pi = freelie::pi_order(k, params.m);
  v.regime_exponent = Rat(pi - 2 * k) / Rat(pi - 1);
  if (params.asymmetric()) {
    const int pip = freelie::pi_order(kp, *params.m_prime);
    v.regime_exponent_prime = Rat(pip - 2 * kp) / Rat(pip - 1);
  }
  v.delta_descriptor = params.asymmetric()
                           ? "int_0^t (u_" + std::to_string(k) + "^2 + v_" +
                                 std::to_string(kp) + "^2)"
                           : "int_0^t (u_" + std::to_string(k) + "^2 + v_" +
                                 std::to_string(k) + "^2)";
  if (v.bc.holds) {
    v.outcome = VerdictOutcome::Obstruction;
    v.drift_direction = vec_add(v.e1, v.e2);
  }
  return v;
}

}  // namespace

ObstructionVerdict stlc_verdict_symmetric(fields::LieEvaluator& ev, int k,
                                          int m, int length_cap) {
  return make_verdict(ev, ObstructionParams::symmetric(k, m), length_cap);
}

ObstructionVerdict stlc_verdict_asymmetric(fields::LieEvaluator& ev, int k,
                                           int k_prime, int m, int m_prime,
                                           int length_cap) {
  return make_verdict(
      ev, ObstructionParams::asymmetric_params(k, k_prime, m, m_prime),
      length_cap);
}

SthetaResult sussmann_stheta_check(fields::LieEvaluator& ev, const Rat& theta,
                                   Bracket frak_b, int length_cap) {
  if (frak_b->n0 % 2 != 1 || frak_b->n1 % 2 != 0 || frak_b->n2 % 2 != 0)
    throw InvalidParamsError(
        "need n0 odd and n1, n2 even for the swap-symmetrized bracket");
  if (sgn(theta) < 0 || theta > Rat(1))
    throw InvalidParamsError("theta must lie in [0, 1]");
  const freelie::HallBasis& basis = ev.basis();
  length_cap = std::min(length_cap, basis.max_length());

  RatVec target = ev.at_zero(basis.swap_sigma(frak_b));

  SthetaResult result;
  auto horizon = ev.nilpotency_horizon(std::max(length_cap, 2));
  int effective = length_cap;
  if (horizon && *horizon - 1 <= length_cap) {
    effective = *horizon - 1;
    result.bounded = false;
  }
  const Rat threshold =
      Rat(frak_b->n()) + theta * Rat(frak_b->n0);
  RationalSubspace span(ev.system().dim());
  for (Bracket b : basis.members()) {
    if (b->length > effective) continue;
    if (Rat(b->n()) + theta * Rat(b->n0) >= threshold) continue;
    RatVec v = ev.at_zero(b);
    if (!vec_is_zero(v)) span.insert(v);
  }
  result.in_span = span.contains(target);
  return result;
}

QuarticOutcome quartic_bc_check(const std::array<RatVec, 5>& e,
                                const RationalSubspace& n) {
  const int d = n.ambient_dim();
  for (const RatVec& v : e)
    if (static_cast<int>(v.size()) != d)
      throw DimensionError("quartic check: dimension mismatch");

  // Achievable value tuples (P(e0), ..., P(e4)) form the column space of
  // the reduced matrix; work in that space.
  std::vector<RatVec> reduced;
  for (const RatVec& v : e) reduced.push_back(n.reduce(v));
  RationalSubspace value_space(5);
  const auto cols = n.non_pivot_columns();
  for (int c : cols) {
    RatVec col(5);
    for (int i = 0; i < 5; ++i) col[i] = reduced[i][c];
    value_space.insert(col);
  }
  const std::vector<RatVec>& z = value_space.rows();
  const int r = value_space.rank();
  if (r == 0) return {};

  auto y_of = [&](const RatVec& lambda, int i) {
    Rat s(0);
    for (int j = 0; j < r; ++j) s += lambda[j] * z[j][i];
    return s;
  };

  for (int s1 : {1, -1}) {
    for (int s3 : {1, -1}) {
      // Homogeneous strict system; strict rows tightened to <= -1.
      std::vector<RatVec> rows;
      RatVec rhs;
      auto add = [&](std::initializer_list<std::pair<int, Rat>> terms,
                     const Rat& bound) {
        RatVec row(r, Rat(0));
        for (const auto& [i, c] : terms)
          for (int j = 0; j < r; ++j) row[j] += c * z[j][i];
        rows.push_back(std::move(row));
        rhs.push_back(bound);
      };
      add({{1, rat(-s1)}}, Rat(0));                             // s1 y1 >= 0
      add({{3, rat(-s3)}}, Rat(0));                             // s3 y3 >= 0
      add({{2, rat(-1)}}, Rat(0));                              // y2 >= 0
      add({{1, rat(3 * s1)}, {3, rat(s3)}, {0, rat(-1)}}, rat(-1));
      add({{1, rat(s1)}, {3, rat(3 * s3)}, {4, rat(-1)}}, rat(-1));

      auto lambda = solve_inequalities(rows, rhs);
      if (!lambda) continue;

      // Recover a concrete form realizing the value tuple.
      RatVec y(5);
      for (int i = 0; i < 5; ++i) y[i] = y_of(*lambda, i);
      std::vector<RatVec> eq_rows;
      RatVec eq_rhs;
      for (const RatVec& row : n.rows()) {
        eq_rows.push_back(row);
        eq_rhs.push_back(Rat(0));
      }
      for (int i = 0; i < 5; ++i) {
        eq_rows.push_back(e[i]);
        eq_rhs.push_back(y[i]);
      }
      auto p = solve_linear(eq_rows, eq_rhs);
      if (!p) throw std::logic_error("quartic witness lift failed");
      RatVec witness = normalize_witness(*p);

      Rat p0 = dot(witness, e[0]), p1 = dot(witness, e[1]),
          p2 = dot(witness, e[2]), p3 = dot(witness, e[3]),
          p4 = dot(witness, e[4]);
      if (!(3 * rat_abs(p1) + rat_abs(p3) < p0 &&
            rat_abs(p1) + 3 * rat_abs(p3) < p4 && sgn(p2) >= 0))
        throw std::logic_error("quartic witness failed verification");
      return {true, witness};
    }
  }
  return {};
}

}  // namespace stlc::obstruction

#ifndef STLC_OBSTRUCTION_HPP
#define STLC_OBSTRUCTION_HPP

#include <array>
#include <optional>
#include <string>

#include "stlc/linalg.hpp"
#include "stlc/vectorfield.hpp"

namespace stlc::obstruction {

using fields::RationalSubspace;
using fields::RatVec;

struct BcInput {
  RatVec e1, e2, e3;
  RationalSubspace n;
};

enum class BlockingCase {
  ZeroImage,              // some image vanishes in the quotient
  IndependentHighCross,   // e3 = a e1 + b e2 with a b >= 1/4
  NegativeRatio,          // e2 = beta e1 with beta < 0
  RatioDominatedBySquare  // e2 = beta e1, e3 = gamma e1, beta <= gamma^2
};

std::string to_string(BlockingCase c);

// Either a witness linear form (P restricted to N zero, P(e1), P(e2) > 0 and
// P(e3)^2 < P(e1) P(e2), all exact) or the blocking case with its realized
// parameters.
struct BcOutcome {
  bool holds = false;
  std::optional<RatVec> witness;  // row over Q^d, first nonzero entry +-1
  std::optional<BlockingCase> blocking_case;
  std::optional<Rat> param_a, param_b;  // (a, b) or (beta, gamma)
};

BcOutcome bc_classify(const BcInput& input);

// Positive definiteness of (a1, a2) -> alpha a1^2 / 2 + beta a2^2 / 2
// + gamma a1 a2.
bool quadratic_form_pd(const Rat& alpha, const Rat& beta, const Rat& gamma);

enum class VerdictOutcome { Obstruction, Inconclusive };

struct ObstructionVerdict {
  freelie::ObstructionParams params;
  VerdictOutcome outcome = VerdictOutcome::Inconclusive;
  BcOutcome bc;
  RatVec e1, e2, e3;
  std::optional<RatVec> drift_direction;  // e1 + e2 when obstructed
  Rat regime_exponent;                    // (pi - 2k) / (pi - 1)
  std::optional<Rat> regime_exponent_prime;
  std::string delta_descriptor;
  bool truncated = false;
  std::optional<int> horizon;
};

// Verdict for the symmetric pair of bad brackets (W_k^1, W_k^2) against the
// compensating set at regularity m.
ObstructionVerdict stlc_verdict_symmetric(fields::LieEvaluator& ev, int k,
                                          int m, int length_cap);

// Asymmetric variant: bad pair (W_k^1, W_{k'}^2) with 1 <= k' <= k.
ObstructionVerdict stlc_verdict_asymmetric(fields::LieEvaluator& ev, int k,
                                           int k_prime, int m, int m_prime,
                                           int length_cap);

struct SthetaResult {
  bool in_span = false;
  // True when the span enumeration was cut by the length cap rather than a
  // nilpotency horizon; the check is then one-sided.
  bool bounded = true;
};

// Span test f_{sigma(frak_b)}(0) in Span{f_b(0); n(b) + theta n0(b) <
// n(frak_b) + theta n0(frak_b)}. Requires n0(frak_b) odd and n1, n2 even.
SthetaResult sussmann_stheta_check(fields::LieEvaluator& ev, const Rat& theta,
                                   freelie::Bracket frak_b, int length_cap);

struct QuarticOutcome {
  bool holds = false;
  std::optional<RatVec> witness;
};

// Heuristic quartic-competition check: searches for a rational form with
// P|_N = 0, 3|P(e1)| + |P(e3)| < P(e0), |P(e1)| + 3|P(e3)| < P(e4) and
// P(e2) >= 0, by sign enumeration over (P(e1), P(e3)) and exact linear
// feasibility.
QuarticOutcome quartic_bc_check(const std::array<RatVec, 5>& e,
                                const RationalSubspace& n);

}  // namespace stlc::obstruction

#endif

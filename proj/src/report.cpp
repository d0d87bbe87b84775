#include "stlc/report.hpp"

#include <cstdint>
#include <sstream>

namespace stlc::cli {

std::string input_digest(const std::string& content) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : content) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << hash;
  return os.str();
}

Json rational_to_json(const Rat& q) { return to_string(q); }

Json vector_to_json(const fields::RatVec& v) {
  Json arr = Json::array();
  for (const Rat& x : v) arr.push_back(rational_to_json(x));
  return arr;
}

Json verdict_to_json(const obstruction::ObstructionVerdict& verdict) {
  using obstruction::VerdictOutcome;
  Json entry;
  entry["mode"] = verdict.params.asymmetric() ? "asymmetric" : "symmetric";
  entry["k"] = verdict.params.k;
  entry["m"] = verdict.params.m;
  if (verdict.params.asymmetric()) {
    entry["k_prime"] = *verdict.params.k_prime;
    entry["m_prime"] = *verdict.params.m_prime;
  }
  entry["outcome"] = verdict.outcome == VerdictOutcome::Obstruction
                         ? "obstruction"
                         : "inconclusive";
  entry["evaluations"] = Json{{"w1", vector_to_json(verdict.e1)},
                              {"w2", vector_to_json(verdict.e2)},
                              {"cross", vector_to_json(verdict.e3)}};
  if (verdict.bc.holds) {
    entry["witness"] = vector_to_json(*verdict.bc.witness);
    Json drift;
    drift["direction"] = vector_to_json(*verdict.drift_direction);
    drift["regime_exponent"] = rational_to_json(verdict.regime_exponent);
    if (verdict.regime_exponent_prime)
      drift["regime_exponent_prime"] =
          rational_to_json(*verdict.regime_exponent_prime);
    drift["strength"] = verdict.delta_descriptor;
    entry["drift"] = drift;
  } else {
    Json blocking;
    blocking["tag"] = obstruction::to_string(*verdict.bc.blocking_case);
    if (verdict.bc.param_a)
      blocking["a"] = rational_to_json(*verdict.bc.param_a);
    if (verdict.bc.param_b)
      blocking["b"] = rational_to_json(*verdict.bc.param_b);
    entry["blocking_case"] = blocking;
  }
  entry["truncated"] = verdict.truncated;
  if (verdict.horizon) entry["nilpotency_horizon"] = *verdict.horizon;
  entry["heuristic"] = false;
  return entry;
}

}  // namespace stlc::cli

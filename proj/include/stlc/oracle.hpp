#ifndef STLC_ORACLE_HPP
#define STLC_ORACLE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stlc/corpus.hpp"
#include "stlc/hall.hpp"
#include "stlc/piecewise.hpp"

namespace stlc::sim {

// One summand of a coordinate's closed form: coeff (optionally times the
// system parameter) times a product of second-kind coordinates indexed by
// bracket literals.
struct OracleTerm {
  Rat coeff;
  bool times_alpha = false;
  std::vector<std::string> factors;  // fully parenthesized bracket literals
};

// A registered example system together with the closed form of its exact
// state as a combination of second-kind coordinates.
struct CorpusEntry {
  std::string name;
  int dim;
  bool has_alpha;
  std::function<fields::PolySystem(const Rat&)> build;
  std::vector<std::vector<OracleTerm>> coordinates;
};

const std::vector<CorpusEntry>& corpus_entries();
const CorpusEntry* find_corpus_entry(const std::string& name);

// Exact state at time t through the coordinate combinations. truncation
// keeps only terms whose total bracket degree n is <= truncation (< 0
// keeps everything, which is the exact state for these systems).
fields::RatVec exact_state_oracle(const CorpusEntry& entry, const Rat& alpha,
                                  const signals::ControlPair& controls,
                                  const Rat& t,
                                  const freelie::HallBasis& basis,
                                  int truncation = -1);

}  // namespace stlc::sim

#endif

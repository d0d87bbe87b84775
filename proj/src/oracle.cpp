#include "stlc/oracle.hpp"

#include "stlc/errors.hpp"
#include "stlc/xi.hpp"

namespace stlc::sim {

namespace {

using Terms = std::vector<OracleTerm>;

OracleTerm term(const Rat& c, std::vector<std::string> factors,
                bool alpha = false) {
  return OracleTerm{c, alpha, std::move(factors)};
}

std::vector<CorpusEntry> make_entries() {
  std::vector<CorpusEntry> entries;

  entries.push_back(CorpusEntry{
      "jouet", 3, true,
      [](const Rat& a) { return corpus::jouet(a); },
      {
          Terms{term(rat(1), {"X1"})},
          Terms{term(rat(1), {"X2"})},
          Terms{term(rat(2), {"(X1,(X1,X0))"}),
                term(rat(2), {"(X2,(X2,X0))"}),
                term(rat(1), {"(X2,(X1,X0))"}, true)},
      }});

  entries.push_back(CorpusEntry{
      "exintegrateur", 4, true,
      [](const Rat& a) { return corpus::exintegrateur(a); },
      {
          Terms{term(rat(1), {"X1"})},
          Terms{term(rat(1), {"(X1,X0)"})},
          Terms{term(rat(1), {"X2"})},
          Terms{term(rat(2), {"((X1,X0),((X1,X0),X0))"}),
                term(rat(2), {"(X2,(X2,X0))"}),
                term(rat(1), {"((X1,X0),(X2,X0))"}, true)},
      }});

  entries.push_back(CorpusEntry{
      "excomplexe", 4, false,
      [](const Rat&) { return corpus::excomplexe(); },
      {
          Terms{term(rat(1), {"X1"})},
          Terms{term(rat(1), {"(X1,X0)"})},
          Terms{term(rat(1), {"X2"})},
          Terms{term(rat(2), {"(X1,(X1,X0))"}),
                term(rat(4), {"(X2,(X2,X0))"}),
                term(rat(1, 2), {"(X2,(X1,X0))"}),
                term(rat(-2056), {"((X1,X0),((X1,X0),X0))"}),
                term(rat(-1286), {"(X1,(X1,X2))"}),
                term(rat(-1), {"X2", "X2"})},
      }});

  entries.push_back(CorpusEntry{
      "exassym", 4, false,
      [](const Rat&) { return corpus::exassym(); },
      {
          Terms{term(rat(1), {"X1"})},
          Terms{term(rat(1), {"(X1,X0)"})},
          Terms{term(rat(1), {"X2"})},
          Terms{term(rat(2), {"((X1,X0),((X1,X0),X0))"}),
                term(rat(2), {"(X2,(X2,X0))"})},
      }});

  entries.push_back(CorpusEntry{
      "exquartic", 3, false,
      [](const Rat&) { return corpus::exquartic(); },
      {
          Terms{term(rat(1), {"X1"})},
          Terms{term(rat(1), {"X2"})},
          Terms{term(rat(24), {"(X1,(X1,(X1,(X1,X0))))"}),
                term(rat(24), {"(X2,(X2,(X2,(X2,X0))))"})},
      }});

  entries.push_back(CorpusEntry{
      "exf1f2", 5, false,
      [](const Rat&) { return corpus::exf1f2(); },
      {
          Terms{term(rat(1), {"X1"})},
          Terms{term(rat(1), {"X2"})},
          Terms{term(rat(1), {"(X1,X2)"})},
          Terms{term(rat(1), {"((X1,X2),X0)"})},
          Terms{term(rat(1), {"(X1,(X1,X0))"}),
                term(rat(1), {"(X2,(X2,X0))"}),
                term(rat(1), {"(((X1,X2),X0),X0)"})},
      }});

  return entries;
}

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = make_entries();
  return entries;
}

const CorpusEntry* find_corpus_entry(const std::string& name) {
  for (const CorpusEntry& e : corpus_entries())
    if (e.name == name) return &e;
  return nullptr;
}

fields::RatVec exact_state_oracle(const CorpusEntry& entry, const Rat& alpha,
                                  const signals::ControlPair& controls,
                                  const Rat& t,
                                  const freelie::HallBasis& basis,
                                  int truncation) {
  signals::XiSession session(basis, controls);
  freelie::BracketPool& pool = basis.pool();

  fields::RatVec state;
  state.reserve(entry.dim);
  for (const auto& coord : entry.coordinates) {
    Rat value(0);
    for (const OracleTerm& term : coord) {
      int degree = 0;
      Rat product = term.coeff;
      if (term.times_alpha) product *= alpha;
      for (const std::string& literal : term.factors) {
        freelie::Bracket b = freelie::parse_bracket(pool, literal);
        degree += b->n();
        if (truncation >= 0 && degree > truncation) break;
        product *= session.xi(b, t);
      }
      if (truncation >= 0 && degree > truncation) continue;
      value += product;
    }
    state.push_back(value);
  }
  return state;
}

}  // namespace stlc::sim

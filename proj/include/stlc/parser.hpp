#ifndef STLC_PARSER_HPP
#define STLC_PARSER_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stlc/piecewise.hpp"
#include "stlc/polynomial.hpp"
#include "stlc/vectorfield.hpp"

namespace stlc::cli {

struct SourceLocation {
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLocation loc, const std::string& message,
             std::vector<std::string> expected = {});

  const SourceLocation& where() const { return loc_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceLocation loc_;
  std::vector<std::string> expected_;
};

// A parsed system file. Polynomials are kept symbolic over the coordinates
// x1..xd plus the declared parameters (as trailing variables), so documents
// can be pretty-printed and re-parsed losslessly.
struct SystemDocument {
  std::string name;
  int dim = 0;
  std::vector<std::pair<std::string, Rat>> params;
  // One polynomial per coordinate for f0, f1, f2, each over dim + params
  // variables.
  std::vector<std::vector<fields::Poly>> blocks;

  // Substitutes the declared parameter values (with optional overrides).
  fields::PolySystem to_system(
      const std::vector<std::pair<std::string, Rat>>& overrides = {}) const;

  std::string pretty() const;
};

SystemDocument parse_system(const std::string& text);

// A parsed control file: piecewise blocks for u and v sharing one horizon.
struct ControlDocument {
  std::string name;
  Rat horizon;
  std::vector<std::pair<std::string, Rat>> params;
  // (end-of-piece, polynomial in s over 1 + params variables) per channel.
  std::vector<std::pair<Rat, fields::Poly>> u_pieces, v_pieces;

  signals::ControlPair to_controls(
      const std::vector<std::pair<std::string, Rat>>& overrides = {}) const;

  std::string pretty() const;
};

ControlDocument parse_controls(const std::string& text);

// Bracket specs accepted by the command line: a generator ("X1"), a family
// ("W1 j=1 l=0", "C j=2", "M2 j=3"), or a raw parenthesized tree.
freelie::Bracket parse_bracket_spec(freelie::BracketPool& pool,
                                    const std::string& text);

}  // namespace stlc::cli

#endif

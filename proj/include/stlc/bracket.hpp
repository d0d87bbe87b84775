#ifndef STLC_BRACKET_HPP
#define STLC_BRACKET_HPP

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

namespace stlc::freelie {

// Generator tags. X1 and X2 are the controlled directions, X0 the drift.
enum class Gen : std::uint8_t { X0 = 0, X1 = 1, X2 = 2 };

struct BracketNode;
// A formal bracket: an element of the free magma over {X0, X1, X2},
// hash-consed so structural equality is pointer equality.
using Bracket = const BracketNode*;

struct BracketNode {
  Bracket left = nullptr;   // nullptr for generators
  Bracket right = nullptr;
  Gen gen = Gen::X0;        // valid only for generators
  int length = 1;
  int n0 = 0, n1 = 0, n2 = 0;

  bool is_generator() const { return left == nullptr; }
  int n() const { return n1 + n2; }
};

struct Counts {
  int length, n0, n1, n2;
};

inline Counts counts(Bracket b) { return {b->length, b->n0, b->n1, b->n2}; }

// Owns and interns all bracket nodes used by a basis and its clients.
class BracketPool {
 public:
  BracketPool();
  BracketPool(const BracketPool&) = delete;
  BracketPool& operator=(const BracketPool&) = delete;

  Bracket generator(Gen g) const { return gens_[static_cast<int>(g)]; }
  Bracket x0() const { return gens_[0]; }
  Bracket x1() const { return gens_[1]; }
  Bracket x2() const { return gens_[2]; }

  // Interned ordered pair (a, b).
  Bracket pair(Bracket a, Bracket b);

  // b 0^nu: right-iterated bracketing with X0.
  Bracket bracket_int(Bracket b, int nu);

  std::size_t size() const { return nodes_.size(); }

 private:
  std::deque<BracketNode> nodes_;
  std::unordered_map<std::uint64_t, std::vector<Bracket>> intern_;
  Bracket gens_[3];
};

// Total order on formal brackets: X0 maximal, then n(b) ascending, then
// length ascending, then recursively on (left, right) with X1 < X2.
// Restricted to Hall set members this is the Hall order.
bool bracket_less(Bracket a, Bracket b);

// Fully parenthesized dump form, e.g. "((X1,X2),X0)".
std::string to_string(Bracket b);

// Parses the dump form; throws std::invalid_argument on malformed input.
Bracket parse_bracket(BracketPool& pool, const std::string& text);

}  // namespace stlc::freelie

#endif

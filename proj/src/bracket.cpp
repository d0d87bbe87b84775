#include "stlc/bracket.hpp"

#include <functional>
#include <stdexcept>

namespace stlc::freelie {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = a * 0x9e3779b97f4a7c15ull;
  h ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t node_key(Bracket a, Bracket b) {
  return mix(reinterpret_cast<std::uintptr_t>(a),
             reinterpret_cast<std::uintptr_t>(b));
}

}  // namespace

BracketPool::BracketPool() {
  for (int i = 0; i < 3; ++i) {
    BracketNode n;
    n.gen = static_cast<Gen>(i);
    n.length = 1;
    n.n0 = (i == 0);
    n.n1 = (i == 1);
    n.n2 = (i == 2);
    nodes_.push_back(n);
    gens_[i] = &nodes_.back();
  }
}

Bracket BracketPool::pair(Bracket a, Bracket b) {
  const std::uint64_t key = node_key(a, b);
  auto& bucket = intern_[key];
  for (Bracket c : bucket)
    if (c->left == a && c->right == b) return c;
  BracketNode n;
  n.left = a;
  n.right = b;
  n.length = a->length + b->length;
  n.n0 = a->n0 + b->n0;
  n.n1 = a->n1 + b->n1;
  n.n2 = a->n2 + b->n2;
  nodes_.push_back(n);
  bucket.push_back(&nodes_.back());
  return &nodes_.back();
}

Bracket BracketPool::bracket_int(Bracket b, int nu) {
  for (int i = 0; i < nu; ++i) b = pair(b, x0());
  return b;
}

bool bracket_less(Bracket a, Bracket b) {
  if (a == b) return false;
  // X0 is the maximum element.
  const bool a0 = a->is_generator() && a->gen == Gen::X0;
  const bool b0 = b->is_generator() && b->gen == Gen::X0;
  if (a0 || b0) return b0 && !a0;
  if (a->n() != b->n()) return a->n() < b->n();
  if (a->length != b->length) return a->length < b->length;
  if (a->is_generator() && b->is_generator())
    return static_cast<int>(a->gen) < static_cast<int>(b->gen);
  // Equal n and length, both composite (same-length generators were handled).
  if (a->left != b->left) return bracket_less(a->left, b->left);
  return bracket_less(a->right, b->right);
}

std::string to_string(Bracket b) {
  if (b->is_generator()) {
    switch (b->gen) {
      case Gen::X0: return "X0";
      case Gen::X1: return "X1";
      case Gen::X2: return "X2";
    }
  }
  return "(" + to_string(b->left) + "," + to_string(b->right) + ")";
}

namespace {

Bracket parse_rec(BracketPool& pool, const std::string& s, std::size_t& i) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("bad bracket literal: " + what + " at offset " +
                                std::to_string(i) + " in '" + s + "'");
  };
  if (i >= s.size()) fail("unexpected end");
  if (s[i] == 'X') {
    if (i + 1 >= s.size() || s[i + 1] < '0' || s[i + 1] > '2')
      fail("expected X0, X1 or X2");
    Gen g = static_cast<Gen>(s[i + 1] - '0');
    i += 2;
    return pool.generator(g);
  }
  if (s[i] != '(') fail("expected '(' or generator");
  ++i;
  Bracket a = parse_rec(pool, s, i);
  if (i >= s.size() || s[i] != ',') fail("expected ','");
  ++i;
  Bracket b = parse_rec(pool, s, i);
  if (i >= s.size() || s[i] != ')') fail("expected ')'");
  ++i;
  return pool.pair(a, b);
}

}  // namespace

Bracket parse_bracket(BracketPool& pool, const std::string& text) {
  std::size_t i = 0;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  Bracket b = parse_rec(pool, s, i);
  if (i != s.size())
    throw std::invalid_argument("trailing characters in bracket literal '" +
                                text + "'");
  return b;
}

}  // namespace stlc::freelie

#ifndef STLC_HALL_HPP
#define STLC_HALL_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stlc/bracket.hpp"
#include "stlc/rational.hpp"

namespace stlc::freelie {

class HallBasis;

// A finite rational combination of Hall basis elements, keyed by basis rank.
// Zero coefficients are never stored.
class LieElement {
 public:
  LieElement() = default;

  static LieElement unit(int rank) {
    LieElement e;
    e.terms_[rank] = Rat(1);
    return e;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, Rat>& terms() const { return terms_; }
  Rat coefficient(int rank) const;

  std::vector<int> support() const;

  void add_scaled(const LieElement& other, const Rat& factor);
  void scale(const Rat& factor);

  LieElement operator+(const LieElement& o) const;
  LieElement operator-(const LieElement& o) const;
  LieElement operator*(const Rat& factor) const;
  LieElement operator-() const;
  bool operator==(const LieElement& o) const { return terms_ == o.terms_; }

 private:
  std::map<int, Rat> terms_;
};

enum class FamilyKind { M1, M2, W1, W2, C };

struct FamilyId {
  FamilyKind kind;
  int j = 0;
  int l = 0;  // ignored for M kinds
};

// Parameters of the compensating bracket set: symmetric (k, m), or
// asymmetric with an extra (k', m'), k' <= k.
struct ObstructionParams {
  int k = 1;
  int m = 1;
  std::optional<int> k_prime;   // set => asymmetric
  std::optional<int> m_prime;

  bool asymmetric() const { return k_prime.has_value(); }
  static ObstructionParams symmetric(int k, int m) { return {k, m, {}, {}}; }
  static ObstructionParams asymmetric_params(int k, int kp, int m, int mp) {
    return {k, m, kp, mp};
  }
};

// Truncation order pi(k, m) = 1 + ceil(2k / m).
int pi_order(int k, int m);

// The Hall set over {X0, X1, X2} generated up to a length cap, with the
// fixed total order (X0 maximal; n ascending; length ascending; structural
// tie-break with X1 < X2). Construction validates the three Hall axioms and
// the expected shapes of the n = 1 and n = 2 layers, and throws if any fails.
//
// max_n restricts generation to brackets with n(b) <= max_n; the slice is
// closed under the normalization rewriting because (n0, n1, n2) is a grading.
class HallBasis {
 public:
  explicit HallBasis(int max_length, int max_n = -1);

  static int default_cap();  // env STLC_ORACLE_MAX_LEN, else 10

  BracketPool& pool() const { return *pool_; }
  int max_length() const { return max_length_; }
  int max_n() const { return max_n_; }

  int size() const { return static_cast<int>(members_.size()); }
  Bracket member(int rank) const { return members_[rank]; }
  const std::vector<Bracket>& members() const { return members_; }
  std::optional<int> rank_of(Bracket b) const;
  bool is_member(Bracket b) const { return rank_of(b).has_value(); }

  // Number of members of each length 1..max_length (unrestricted builds
  // match the Witt dimensions).
  std::vector<int> layer_dims() const;
  std::vector<Bracket> members_of_length(int length) const;

  // Named bracket families of the n <= 2 layers. Throws InvalidParamsError
  // on bad indices (W needs j >= 1; M/C need j >= 0; l >= 0).
  Bracket family(FamilyKind kind, int j, int l = 0) const;
  // Recognizes a member of the n <= 2 layers; nullopt for anything else.
  std::optional<FamilyId> family_of(Bracket b) const;

  // Unique (b1, b2, m) with b = ad_{b1}^m(b2), m maximal. Throws on
  // generators.
  struct Decomposition {
    Bracket b1;
    Bracket b2;
    int m;
  };
  Decomposition hall_decompose(Bracket b) const;

  // Expansion of E(b) on the basis via antisymmetry/Jacobi rewriting.
  LieElement normalize(Bracket b) const;
  LieElement normalize(Gen g) const { return normalize(pool_->generator(g)); }

  LieElement lie_bracket(const LieElement& a, const LieElement& b) const;
  LieElement bracket_int(const LieElement& a, int nu) const;

  // Generator swap morphism pi (X1 <-> X2) and sigma(b) = E(b) + pi(E(b)).
  LieElement swap_pi(const LieElement& a) const;
  LieElement swap_sigma(Bracket b) const;

  // Membership in the obstruction set decided from counts and family
  // identity only.
  bool in_obstruction_set(Bracket b, const ObstructionParams& params) const;

  // One fully parenthesized member per line, in basis order.
  std::string dump() const;

 private:
  void build();
  void validate() const;
  LieElement bracket_ranks(int p, int q) const;
  LieElement normalize_uncached(Bracket b) const;

  std::unique_ptr<BracketPool> pool_;
  int max_length_;
  int max_n_;
  std::vector<Bracket> members_;
  std::map<Bracket, int> rank_;
  mutable std::recursive_mutex cache_mutex_;
  mutable std::map<std::pair<int, int>, LieElement> bracket_cache_;
  mutable std::map<Bracket, LieElement> normalize_cache_;
};

// Coefficient lists of the three bracket-expansion recursions. alpha needs
// nu >= 1 and has entries for 0 <= r <= (nu-1)/2; beta and gamma have
// entries for 0 <= r <= nu.
std::vector<long> expand_coefficients_alpha(int nu);
std::vector<long> expand_coefficients_beta(int nu);
std::vector<long> expand_coefficients_gamma(int nu);

}  // namespace stlc::freelie

#endif

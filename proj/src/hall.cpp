#include "stlc/hall.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "stlc/errors.hpp"

namespace stlc::freelie {

Rat LieElement::coefficient(int rank) const {
  auto it = terms_.find(rank);
  return it == terms_.end() ? Rat(0) : it->second;
}

std::vector<int> LieElement::support() const {
  std::vector<int> s;
  s.reserve(terms_.size());
  for (const auto& [rank, coef] : terms_) s.push_back(rank);
  return s;
}

void LieElement::add_scaled(const LieElement& other, const Rat& factor) {
  if (stlc::is_zero(factor)) return;
  for (const auto& [rank, coef] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(rank, coef * factor);
    if (!inserted) {
      it->second += coef * factor;
      if (stlc::is_zero(it->second)) terms_.erase(it);
    }
  }
}

void LieElement::scale(const Rat& factor) {
  if (stlc::is_zero(factor)) {
    terms_.clear();
    return;
  }
  for (auto& [rank, coef] : terms_) coef *= factor;
}

LieElement LieElement::operator+(const LieElement& o) const {
  LieElement r = *this;
  r.add_scaled(o, Rat(1));
  return r;
}

LieElement LieElement::operator-(const LieElement& o) const {
  LieElement r = *this;
  r.add_scaled(o, Rat(-1));
  return r;
}

LieElement LieElement::operator*(const Rat& factor) const {
  LieElement r = *this;
  r.scale(factor);
  return r;
}

LieElement LieElement::operator-() const { return *this * Rat(-1); }

int pi_order(int k, int m) {
  if (k < 1 || m < 1) throw InvalidParamsError("pi(k, m) needs k, m >= 1");
  return 1 + (2 * k + m - 1) / m;
}

int HallBasis::default_cap() {
  if (const char* env = std::getenv("STLC_ORACLE_MAX_LEN")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 10;
}

HallBasis::HallBasis(int max_length, int max_n)
    : pool_(std::make_unique<BracketPool>()),
      max_length_(max_length),
      max_n_(max_n) {
  if (max_length < 1)
    throw InvalidParamsError("Hall basis needs max_length >= 1");
  const bool restricted = max_n_ >= 0 && max_n_ <= 2;
  const int cap = restricted ? 64 : default_cap();
  if (max_length > cap)
    throw CapacityError("Hall basis length " + std::to_string(max_length) +
                        " exceeds the configured cap " + std::to_string(cap));
  if (max_n_ < 0) max_n_ = max_length;
  build();
  validate();
}

void HallBasis::build() {
  std::vector<std::vector<Bracket>> by_length(max_length_ + 1);
  by_length[1] = {pool_->x1(), pool_->x2(), pool_->x0()};
  if (max_n_ < 1) by_length[1] = {pool_->x0()};

  for (int len = 2; len <= max_length_; ++len) {
    for (int la = 1; la < len; ++la) {
      const int lb = len - la;
      for (Bracket a : by_length[la]) {
        for (Bracket b : by_length[lb]) {
          if (a->n() + b->n() > max_n_) continue;
          if (!bracket_less(a, b)) continue;
          if (!b->is_generator() && bracket_less(a, b->left)) continue;
          by_length[len].push_back(pool_->pair(a, b));
        }
      }
    }
  }

  for (int len = 1; len <= max_length_; ++len)
    for (Bracket b : by_length[len]) members_.push_back(b);
  std::sort(members_.begin(), members_.end(), bracket_less);
  for (int i = 0; i < static_cast<int>(members_.size()); ++i)
    rank_[members_[i]] = i;
}

void HallBasis::validate() const {
  auto fail = [](const std::string& what) {
    throw std::logic_error("Hall basis validation failed: " + what);
  };
  auto leq = [](Bracket a, Bracket b) { return a == b || bracket_less(a, b); };

  if (max_n_ >= 1 && (!is_member(pool_->x1()) || !is_member(pool_->x0())))
    fail("generators missing");
  const Bracket x0 = pool_->x0();
  for (Bracket b : members_) {
    if (b != x0 && !bracket_less(b, x0)) fail("X0 is not maximal");
    if (b->is_generator()) continue;
    if (!is_member(b->left) || !is_member(b->right))
      fail("factor of a member is not a member");
    if (!bracket_less(b->left, b->right)) fail("left < right violated");
    if (!b->right->is_generator() && !leq(b->right->left, b->left))
      fail("lambda(right) <= left violated");
    if (!bracket_less(b->left, b)) fail("left < (left, right) violated");
  }

  // Layer shapes: n = 1 is the X1 0^j / X2 0^j chain, n = 2 splits into the
  // W and C families.
  for (Bracket b : members_) {
    if (b->n() == 1 || b->n() == 2) {
      if (!family_of(b)) fail("unrecognized member " + to_string(b) +
                              " in the n <= 2 layers");
    }
  }
  if (max_n_ >= 1) {
    for (int j = 0; j + 1 <= max_length_; ++j) {
      Bracket m1 = pool_->bracket_int(pool_->x1(), j);
      Bracket m2 = pool_->bracket_int(pool_->x2(), j);
      if (!is_member(m1) || !is_member(m2)) fail("degree-1 chain incomplete");
      if (!bracket_less(m1, m2)) fail("X1 0^j < X2 0^j violated");
      if (j + 2 <= max_length_ &&
          !bracket_less(m2, pool_->bracket_int(pool_->x1(), j + 1)))
        fail("X2 0^j < X1 0^{j+1} violated");
    }
  }
}

std::optional<int> HallBasis::rank_of(Bracket b) const {
  auto it = rank_.find(b);
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> HallBasis::layer_dims() const {
  std::vector<int> dims(max_length_ + 1, 0);
  for (Bracket b : members_) dims[b->length]++;
  dims.erase(dims.begin());
  return dims;
}

std::vector<Bracket> HallBasis::members_of_length(int length) const {
  std::vector<Bracket> out;
  for (Bracket b : members_)
    if (b->length == length) out.push_back(b);
  return out;
}

Bracket HallBasis::family(FamilyKind kind, int j, int l) const {
  if (j < 0 || l < 0) throw InvalidParamsError("family indices must be >= 0");
  BracketPool& pool = *pool_;
  switch (kind) {
    case FamilyKind::M1:
      return pool.bracket_int(pool.x1(), j);
    case FamilyKind::M2:
      return pool.bracket_int(pool.x2(), j);
    case FamilyKind::W1:
      if (j < 1) throw InvalidParamsError("W families need j >= 1");
      return pool.bracket_int(pool.pair(pool.bracket_int(pool.x1(), j - 1),
                                        pool.bracket_int(pool.x1(), j)),
                              l);
    case FamilyKind::W2:
      if (j < 1) throw InvalidParamsError("W families need j >= 1");
      return pool.bracket_int(pool.pair(pool.bracket_int(pool.x2(), j - 1),
                                        pool.bracket_int(pool.x2(), j)),
                              l);
    case FamilyKind::C: {
      Bracket u = pool.bracket_int(pool.x1(), (j + 1) / 2);
      Bracket v = pool.bracket_int(pool.x2(), j / 2);
      // (-1)^j swap convention: odd j reverses the pair.
      Bracket core = (j % 2 == 0) ? pool.pair(u, v) : pool.pair(v, u);
      return pool.bracket_int(core, l);
    }
  }
  throw InvalidParamsError("unknown family kind");
}

namespace {

// X_i 0^j recognizer; returns (i, j).
std::optional<std::pair<int, int>> as_m_family(Bracket b) {
  int j = 0;
  while (!b->is_generator()) {
    if (!b->right->is_generator() || b->right->gen != Gen::X0)
      return std::nullopt;
    ++j;
    b = b->left;
  }
  if (b->gen == Gen::X1) return std::make_pair(1, j);
  if (b->gen == Gen::X2) return std::make_pair(2, j);
  return std::nullopt;
}

}  // namespace

std::optional<FamilyId> HallBasis::family_of(Bracket b) const {
  if (b->n() == 1) {
    auto m = as_m_family(b);
    if (!m) return std::nullopt;
    return FamilyId{m->first == 1 ? FamilyKind::M1 : FamilyKind::M2,
                    m->second, 0};
  }
  if (b->n() != 2) return std::nullopt;
  int l = 0;
  while (!b->is_generator() && b->right->is_generator() &&
         b->right->gen == Gen::X0) {
    ++l;
    b = b->left;
  }
  if (b->is_generator()) return std::nullopt;
  auto p = as_m_family(b->left);
  auto q = as_m_family(b->right);
  if (!p || !q) return std::nullopt;
  if (p->first == 1 && q->first == 1 && q->second == p->second + 1)
    return FamilyId{FamilyKind::W1, q->second, l};
  if (p->first == 2 && q->first == 2 && q->second == p->second + 1)
    return FamilyId{FamilyKind::W2, q->second, l};
  if (p->first == 1 && q->first == 2 && p->second == q->second)
    return FamilyId{FamilyKind::C, 2 * q->second, l};
  if (p->first == 2 && q->first == 1 && q->second == p->second + 1)
    return FamilyId{FamilyKind::C, 2 * p->second + 1, l};
  return std::nullopt;
}

HallBasis::Decomposition HallBasis::hall_decompose(Bracket b) const {
  if (b->is_generator())
    throw InvalidParamsError("cannot decompose a generator");
  if (!is_member(b))
    throw InvalidParamsError("not a basis member: " + to_string(b));
  Bracket b1 = b->left;
  Bracket c = b->right;
  int m = 1;
  while (!c->is_generator() && c->left == b1) {
    ++m;
    c = c->right;
  }
  return {b1, c, m};
}

LieElement HallBasis::bracket_ranks(int p, int q) const {
  if (p == q) return {};
  if (p > q) {
    LieElement r = bracket_ranks(q, p);
    r.scale(Rat(-1));
    return r;
  }
  auto key = std::make_pair(p, q);
  auto it = bracket_cache_.find(key);
  if (it != bracket_cache_.end()) return it->second;

  Bracket bp = members_[p];
  Bracket bq = members_[q];
  if (bp->length + bq->length > max_length_ || bp->n() + bq->n() > max_n_)
    throw BasisTooSmallError(
        "bracket [" + to_string(bp) + ", " + to_string(bq) +
        "] exceeds the generated basis (length cap " +
        std::to_string(max_length_) + ")");

  LieElement result;
  if (bq->is_generator() ||
      (!bracket_less(bp, bq->left))) {
    // Hall pair: (bp, bq) is itself a member.
    auto r = rank_of(pool_->pair(bp, bq));
    if (!r) throw std::logic_error("Hall pair missing from the basis");
    result = LieElement::unit(*r);
  } else {
    // lambda(bq) > bp: rewrite [p, (q1, q2)] = [[p, q1], q2] + [q1, [p, q2]].
    const int q1 = *rank_of(bq->left);
    const int q2 = *rank_of(bq->right);
    result = lie_bracket(bracket_ranks(p, q1), LieElement::unit(q2));
    result.add_scaled(lie_bracket(LieElement::unit(q1), bracket_ranks(p, q2)),
                      Rat(1));
  }
  bracket_cache_.emplace(key, result);
  return result;
}

LieElement HallBasis::lie_bracket(const LieElement& a,
                                  const LieElement& b) const {
  std::lock_guard<std::recursive_mutex> lock(cache_mutex_);
  LieElement out;
  for (const auto& [ra, ca] : a.terms())
    for (const auto& [rb, cb] : b.terms())
      out.add_scaled(bracket_ranks(ra, rb), ca * cb);
  return out;
}

LieElement HallBasis::normalize_uncached(Bracket b) const {
  if (auto r = rank_of(b)) return LieElement::unit(*r);
  if (b->is_generator())
    throw std::logic_error("generator missing from the basis");
  if (b->length > max_length_ || b->n() > max_n_)
    throw BasisTooSmallError("bracket " + to_string(b) +
                             " exceeds the generated basis (length cap " +
                             std::to_string(max_length_) + ")");
  return lie_bracket(normalize(b->left), normalize(b->right));
}

LieElement HallBasis::normalize(Bracket b) const {
  std::lock_guard<std::recursive_mutex> lock(cache_mutex_);
  auto it = normalize_cache_.find(b);
  if (it != normalize_cache_.end()) return it->second;
  LieElement r = normalize_uncached(b);
  normalize_cache_.emplace(b, r);
  return r;
}

LieElement HallBasis::bracket_int(const LieElement& a, int nu) const {
  LieElement r = a;
  if (auto x0 = rank_of(pool_->x0()); x0) {
    for (int i = 0; i < nu; ++i) r = lie_bracket(r, LieElement::unit(*x0));
    return r;
  }
  throw std::logic_error("X0 missing from the basis");
}

namespace {

Bracket swap_tree(BracketPool& pool, Bracket b) {
  if (b->is_generator()) {
    switch (b->gen) {
      case Gen::X0: return pool.x0();
      case Gen::X1: return pool.x2();
      case Gen::X2: return pool.x1();
    }
  }
  return pool.pair(swap_tree(pool, b->left), swap_tree(pool, b->right));
}

}  // namespace

LieElement HallBasis::swap_pi(const LieElement& a) const {
  LieElement out;
  for (const auto& [rank, coef] : a.terms())
    out.add_scaled(normalize(swap_tree(*pool_, members_[rank])), coef);
  return out;
}

LieElement HallBasis::swap_sigma(Bracket b) const {
  LieElement e = normalize(b);
  return e + swap_pi(e);
}

bool HallBasis::in_obstruction_set(Bracket b,
                                   const ObstructionParams& params) const {
  const int k = params.k;
  const int m = params.m;
  if (k < 1 || m < 1) throw InvalidParamsError("obstruction set needs k, m >= 1");
  const int n = b->n();
  if (!params.asymmetric()) {
    const int pi = pi_order(k, m);
    if (n >= 1 && n <= pi && n != 2) return true;
    if (n != 2) return false;
    auto fam = family_of(b);
    if (!fam) return false;
    if (fam->kind == FamilyKind::C) return fam->j <= 2 * k - 2;
    return fam->j >= 1 && fam->j <= k - 1;
  }
  const int kp = *params.k_prime;
  const int mp = *params.m_prime;
  if (kp < 1 || mp < 1 || kp > k)
    throw InvalidParamsError("asymmetric obstruction set needs 1 <= k' <= k");
  const int pi = pi_order(k, m);
  const int pip = pi_order(kp, mp);
  if (n >= 1 && n <= pi && n != 2 && b->n1 <= pi && b->n2 <= pip) return true;
  if (n != 2) return false;
  auto fam = family_of(b);
  if (!fam) return false;
  switch (fam->kind) {
    case FamilyKind::C: return fam->j <= k + kp - 2;
    case FamilyKind::W1: return fam->j >= 1 && fam->j <= k - 1;
    case FamilyKind::W2: return fam->j >= 1 && fam->j <= kp - 1;
    default: return false;
  }
}

std::string HallBasis::dump() const {
  std::ostringstream os;
  for (Bracket b : members_) os << to_string(b) << "\n";
  return os.str();
}

namespace {

// Shared recursion of the beta/gamma coefficient lists; only the first two
// rows differ.
std::vector<long> expand_rows(int nu, std::vector<long> row0,
                                   std::vector<long> row1) {
  if (nu < 0) throw InvalidParamsError("expansion coefficients need nu >= 0");
  if (nu == 0) return row0;
  if (nu == 1) return row1;
  std::vector<long> prev2 = std::move(row0), prev1 = std::move(row1);
  for (int n = 2; n <= nu; ++n) {
    std::vector<long> cur(n + 1, 0);
    cur[0] = prev1[0];
    cur[1] = prev1[1];
    for (int r = 2; r <= n - 1; ++r) cur[r] = prev1[r] - prev2[r - 2];
    cur[n] = -prev2[n - 2];
    prev2 = std::move(prev1);
    prev1 = std::move(cur);
  }
  return prev1;
}

}  // namespace

std::vector<long> expand_coefficients_beta(int nu) {
  return expand_rows(nu, {1}, {1, 1});
}

std::vector<long> expand_coefficients_gamma(int nu) {
  return expand_rows(nu, {-1}, {0, 1});
}

std::vector<long> expand_coefficients_alpha(int nu) {
  if (nu < 1) throw InvalidParamsError("alpha coefficients need nu >= 1");
  // Reduce T(0, nu) with T(i, j) = [b0^i, b0^j] using
  // T(i, j+1) = T(i, j)0 - T(i+1, j), down to the atoms T(r, r+1)0^s.
  // A term is keyed by (r, s).
  using Expansion = std::map<std::pair<int, int>, long>;
  std::map<std::pair<int, int>, Expansion> memo;
  std::function<Expansion(int, int)> reduce = [&](int i, int j) -> Expansion {
    if (i == j) return {};
    if (j == i + 1) return {{{i, 0}, 1}};
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Expansion out;
    for (const auto& [rs, c] : reduce(i, j - 1)) out[{rs.first, rs.second + 1}] += c;
    for (const auto& [rs, c] : reduce(i + 1, j - 1)) out[rs] -= c;
    for (auto it = out.begin(); it != out.end();)
      it = (it->second == 0) ? out.erase(it) : std::next(it);
    memo[key] = out;
    return out;
  };
  Expansion e = reduce(0, nu);
  std::vector<long> alpha((nu - 1) / 2 + 1, 0);
  for (const auto& [rs, c] : e) {
    const int r = rs.first, s = rs.second;
    if (2 * r + 1 + s != nu)
      throw std::logic_error("alpha reduction produced an off-grade term");
    alpha[r] = c;
  }
  return alpha;
}

}  // namespace stlc::freelie

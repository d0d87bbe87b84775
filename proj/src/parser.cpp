#include "stlc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "stlc/errors.hpp"

namespace stlc::cli {

using fields::Poly;
using fields::PolySystem;
using fields::PolyVectorField;

namespace {

std::string format_message(const SourceLocation& loc,
                           const std::string& message,
                           const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "line " << loc.line << ", column " << loc.column << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << (i + 1 == expected.size() ? " or " : ", ");
      os << expected[i];
    }
    os << ")";
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(SourceLocation loc, const std::string& message,
                       std::vector<std::string> expected)
    : std::runtime_error(format_message(loc, message, expected)),
      loc_(loc),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
  Ident,
  Number,   // integer literal; rationals are built in the parser
  Plus,
  Minus,
  Star,
  Caret,
  Slash,
  LParen,
  RParen,
  Colon,
  Equals,
  PlusEquals,
  Prime,
  DotDot,
  Newline,
  End
};

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    // Skip horizontal whitespace and comments.
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        consume();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') consume();
      } else {
        break;
      }
    }
    current_.loc = {line_, col_};
    if (pos_ >= text_.size()) {
      current_.kind = Tok::End;
      current_.text = "<end of input>";
      return;
    }
    char c = text_[pos_];
    if (c == '\n') {
      consume();
      current_.kind = Tok::Newline;
      current_.text = "<newline>";
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ident += consume();
      current_.kind = Tok::Ident;
      current_.text = ident;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        num += consume();
      if (pos_ < text_.size() && text_[pos_] == '.') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '.') {
          // Range operator, handled below by the caller.
        } else {
          throw ParseError({line_, col_},
                           "decimal literals are not supported; write an "
                           "exact rational such as 3/10");
        }
      }
      current_.kind = Tok::Number;
      current_.text = num;
      return;
    }
    switch (c) {
      case '+':
        consume();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          consume();
          current_.kind = Tok::PlusEquals;
          current_.text = "+=";
        } else {
          current_.kind = Tok::Plus;
          current_.text = "+";
        }
        return;
      case '-': consume(); current_.kind = Tok::Minus; current_.text = "-"; return;
      case '*': consume(); current_.kind = Tok::Star; current_.text = "*"; return;
      case '^': consume(); current_.kind = Tok::Caret; current_.text = "^"; return;
      case '/': consume(); current_.kind = Tok::Slash; current_.text = "/"; return;
      case '(': consume(); current_.kind = Tok::LParen; current_.text = "("; return;
      case ')': consume(); current_.kind = Tok::RParen; current_.text = ")"; return;
      case ':': consume(); current_.kind = Tok::Colon; current_.text = ":"; return;
      case '=': consume(); current_.kind = Tok::Equals; current_.text = "="; return;
      case '\'': consume(); current_.kind = Tok::Prime; current_.text = "'"; return;
      case '.':
        consume();
        if (pos_ < text_.size() && text_[pos_] == '.') {
          consume();
          current_.kind = Tok::DotDot;
          current_.text = "..";
          return;
        }
        throw ParseError({line_, col_}, "stray '.'", {"'..'"});
    }
    throw ParseError({line_, col_},
                     std::string("unexpected character '") + c + "'");
  }

  char consume() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token current_;
};

// Recursive-descent parser over the token stream; shared between system and
// control files.
class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) {}

  Token expect(Tok kind, const std::string& what) {
    if (lexer_.peek().kind != kind)
      throw ParseError(lexer_.peek().loc,
                       "found '" + lexer_.peek().text + "'", {what});
    return lexer_.take();
  }

  bool accept(Tok kind) {
    if (lexer_.peek().kind != kind) return false;
    lexer_.take();
    return true;
  }

  void skip_newlines() {
    while (accept(Tok::Newline)) {
    }
  }

  void end_of_line() {
    if (lexer_.peek().kind == Tok::End) return;
    expect(Tok::Newline, "end of line");
  }

  bool at_end() {
    skip_newlines();
    return lexer_.peek().kind == Tok::End;
  }

  Token expect_ident(const std::string& what) { return expect(Tok::Ident, what); }

  long expect_integer() {
    Token t = expect(Tok::Number, "an integer");
    return std::stol(t.text);
  }

  Rat expect_rational() {
    bool negative = accept(Tok::Minus);
    Token t = expect(Tok::Number, "a rational literal");
    Rat value(mpz_class(t.text));
    if (accept(Tok::Slash)) {
      Token den = expect(Tok::Number, "a denominator");
      mpz_class d(den.text);
      if (d == 0) throw ParseError(den.loc, "zero denominator");
      value /= Rat(d);
    }
    return negative ? -value : value;
  }

  // variables: name -> index (1-based) in the polynomial ring.
  Poly parse_expr(const std::map<std::string, int>& variables, int nvars) {
    Poly acc = parse_term(variables, nvars);
    while (true) {
      if (accept(Tok::Plus))
        acc = acc + parse_term(variables, nvars);
      else if (accept(Tok::Minus))
        acc = acc - parse_term(variables, nvars);
      else
        return acc;
    }
  }

  Poly parse_term(const std::map<std::string, int>& variables, int nvars) {
    Poly acc = parse_factor(variables, nvars);
    while (accept(Tok::Star)) acc = acc * parse_factor(variables, nvars);
    return acc;
  }

  Poly parse_factor(const std::map<std::string, int>& variables, int nvars) {
    Poly base = parse_primary(variables, nvars);
    if (accept(Tok::Caret)) {
      long e = expect_integer();
      if (e < 0) throw ParseError(lexer_.peek().loc, "negative exponent");
      Poly acc = Poly::constant(nvars, Rat(1));
      for (long i = 0; i < e; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }

  Poly parse_primary(const std::map<std::string, int>& variables, int nvars) {
    const Token& t = lexer_.peek();
    if (t.kind == Tok::Minus) {
      lexer_.take();
      return -parse_factor(variables, nvars);
    }
    if (t.kind == Tok::Number) {
      return Poly::constant(nvars, expect_rational());
    }
    if (t.kind == Tok::LParen) {
      lexer_.take();
      Poly inner = parse_expr(variables, nvars);
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      Token ident = lexer_.take();
      auto it = variables.find(ident.text);
      if (it == variables.end()) {
        if (ident.text.size() > 1 && ident.text[0] == 'x')
          throw ParseError(ident.loc, "unknown coordinate " + ident.text);
        throw ParseError(ident.loc, "unknown identifier '" + ident.text + "'");
      }
      return Poly::variable(nvars, it->second);
    }
    throw ParseError(t.loc, "found '" + t.text + "'",
                     {"a rational literal", "a variable", "'('"});
  }

  Lexer lexer_;
};

std::map<std::string, int> make_variables(
    int dim, const std::vector<std::pair<std::string, Rat>>& params) {
  std::map<std::string, int> vars;
  for (int i = 1; i <= dim; ++i) vars["x" + std::to_string(i)] = i;
  int next = dim + 1;
  for (const auto& [name, value] : params) vars[name] = next++;
  return vars;
}

Poly substitute_params(const Poly& p, int dim,
                       const std::vector<Rat>& values) {
  Poly out(dim);
  for (const auto& [mono, coef] : p.terms()) {
    Rat c = coef;
    fields::Monomial m{std::vector<unsigned>(dim, 0)};
    for (int i = 0; i < dim; ++i) m.exps[i] = mono.exps[i];
    for (std::size_t j = dim; j < mono.exps.size(); ++j)
      c *= rat_pow(values[j - dim], mono.exps[j]);
    out.add_term(m, c);
  }
  return out;
}

std::vector<Rat> resolve_params(
    const std::vector<std::pair<std::string, Rat>>& params,
    const std::vector<std::pair<std::string, Rat>>& overrides) {
  std::vector<Rat> values;
  for (const auto& [name, value] : params) {
    Rat v = value;
    for (const auto& [oname, ovalue] : overrides)
      if (oname == name) v = ovalue;
    values.push_back(v);
  }
  for (const auto& [oname, ovalue] : overrides) {
    bool known = false;
    for (const auto& [name, value] : params) known = known || name == oname;
    if (!known)
      throw InvalidParamsError("unknown parameter override '" + oname + "'");
  }
  return values;
}

}  // namespace

SystemDocument parse_system(const std::string& text) {
  Parser p(text);
  SystemDocument doc;

  p.skip_newlines();
  Token kw = p.expect_ident("'system'");
  if (kw.text != "system") throw ParseError(kw.loc, "found '" + kw.text + "'", {"'system'"});
  doc.name = p.expect_ident("a system name").text;
  Token dimkw = p.expect_ident("'dim'");
  if (dimkw.text != "dim")
    throw ParseError(dimkw.loc, "found '" + dimkw.text + "'", {"'dim'"});
  Token dimtok = p.expect(Tok::Number, "the dimension");
  doc.dim = std::stoi(dimtok.text);
  if (doc.dim < 1 || doc.dim > 32)
    throw ParseError(dimtok.loc, "dimension must lie in [1, 32]");
  p.end_of_line();

  // Parameters come before the field blocks.
  p.skip_newlines();
  while (p.lexer_.peek().kind == Tok::Ident && p.lexer_.peek().text == "param") {
    p.lexer_.take();
    Token name = p.expect_ident("a parameter name");
    if (name.text.size() >= 2 && name.text[0] == 'x' &&
        std::isdigit(static_cast<unsigned char>(name.text[1])))
      throw ParseError(name.loc, "parameter names may not look like coordinates");
    p.expect(Tok::Equals, "'='");
    Rat value = p.expect_rational();
    doc.params.emplace_back(name.text, value);
    p.end_of_line();
    p.skip_newlines();
  }

  const auto variables = make_variables(doc.dim, doc.params);
  const int nvars = doc.dim + static_cast<int>(doc.params.size());
  doc.blocks.assign(3, std::vector<Poly>(doc.dim, Poly(nvars)));

  bool seen[3] = {false, false, false};
  SourceLocation f0_loc{1, 1};
  for (int blocks_parsed = 0; blocks_parsed < 3; ++blocks_parsed) {
    p.skip_newlines();
    Token header = p.expect_ident("'f0:', 'f1:' or 'f2:'");
    if (header.text != "f0" && header.text != "f1" && header.text != "f2")
      throw ParseError(header.loc, "found '" + header.text + "'",
                       {"'f0'", "'f1'", "'f2'"});
    const int which = header.text[1] - '0';
    if (which == 0) f0_loc = header.loc;
    if (seen[which])
      throw ParseError(header.loc, "duplicate block '" + header.text + "'");
    seen[which] = true;
    p.expect(Tok::Colon, "':'");
    p.end_of_line();
    p.skip_newlines();
    // Coordinate lines until the next block header or end of input.
    while (p.lexer_.peek().kind == Tok::Ident) {
      const Token& look = p.lexer_.peek();
      if (look.text == "f0" || look.text == "f1" || look.text == "f2") break;
      Token coord = p.lexer_.take();
      if (coord.text.size() < 2 || coord.text[0] != 'x')
        throw ParseError(coord.loc, "found '" + coord.text + "'",
                         {"a coordinate line like x1' += ..."});
      int index = 0;
      try {
        index = std::stoi(coord.text.substr(1));
      } catch (...) {
        throw ParseError(coord.loc, "malformed coordinate '" + coord.text + "'");
      }
      if (index < 1 || index > doc.dim)
        throw ParseError(coord.loc, "unknown coordinate " + coord.text);
      p.expect(Tok::Prime, "'''");
      p.expect(Tok::PlusEquals, "'+='");
      Poly expr = p.parse_expr(variables, nvars);
      doc.blocks[which][index - 1] = doc.blocks[which][index - 1] + expr;
      p.end_of_line();
      p.skip_newlines();
    }
  }
  if (!p.at_end())
    throw ParseError(p.lexer_.peek().loc,
                     "found '" + p.lexer_.peek().text + "'",
                     {"end of input"});

  // Equilibrium condition on the drift block, checked symbolically: the
  // constant-in-x part must vanish for every parameter value.
  for (int i = 0; i < doc.dim; ++i) {
    for (const auto& [mono, coef] : doc.blocks[0][i].terms()) {
      bool depends_on_x = false;
      for (int j = 0; j < doc.dim; ++j) depends_on_x |= mono.exps[j] > 0;
      if (!depends_on_x)
        throw ParseError(f0_loc, "f0(0) must vanish: coordinate x" +
                                     std::to_string(i + 1) +
                                     " has a constant term in f0");
    }
  }
  return doc;
}

fields::PolySystem SystemDocument::to_system(
    const std::vector<std::pair<std::string, Rat>>& overrides) const {
  std::vector<Rat> values = resolve_params(params, overrides);
  std::vector<PolyVectorField> f;
  for (int g = 0; g < 3; ++g) {
    std::vector<Poly> comps;
    for (int i = 0; i < dim; ++i)
      comps.push_back(substitute_params(blocks[g][i], dim, values));
    f.emplace_back(dim, std::move(comps));
  }
  return PolySystem(f[0], f[1], f[2]);
}

std::string SystemDocument::pretty() const {
  std::ostringstream os;
  os << "system " << name << " dim " << dim << "\n";
  for (const auto& [pname, value] : params)
    os << "param " << pname << " = " << to_string(value) << "\n";
  std::vector<std::string> var_names;
  for (int i = 1; i <= dim; ++i) var_names.push_back("x" + std::to_string(i));
  for (const auto& [pname, value] : params) var_names.push_back(pname);
  for (int g = 0; g < 3; ++g) {
    os << "f" << g << ":\n";
    for (int i = 0; i < dim; ++i) {
      if (blocks[g][i].is_zero()) continue;
      os << "  x" << (i + 1) << "' += " << blocks[g][i].str(var_names) << "\n";
    }
  }
  return os.str();
}

ControlDocument parse_controls(const std::string& text) {
  Parser p(text);
  ControlDocument doc;

  p.skip_newlines();
  Token kw = p.expect_ident("'controls'");
  if (kw.text != "controls")
    throw ParseError(kw.loc, "found '" + kw.text + "'", {"'controls'"});
  doc.name = p.expect_ident("a name").text;
  Token hkw = p.expect_ident("'horizon'");
  if (hkw.text != "horizon")
    throw ParseError(hkw.loc, "found '" + hkw.text + "'", {"'horizon'"});
  doc.horizon = p.expect_rational();
  if (!(sgn(doc.horizon) > 0))
    throw ParseError(hkw.loc, "horizon must be positive");
  p.end_of_line();

  p.skip_newlines();
  while (p.lexer_.peek().kind == Tok::Ident && p.lexer_.peek().text == "param") {
    p.lexer_.take();
    Token name = p.expect_ident("a parameter name");
    p.expect(Tok::Equals, "'='");
    doc.params.emplace_back(name.text, p.expect_rational());
    p.end_of_line();
    p.skip_newlines();
  }

  std::map<std::string, int> variables{{"s", 1}};
  int next = 2;
  for (const auto& [pname, value] : doc.params) variables[pname] = next++;
  const int nvars = 1 + static_cast<int>(doc.params.size());

  bool seen_u = false, seen_v = false;
  for (int channel = 0; channel < 2; ++channel) {
    p.skip_newlines();
    Token header = p.expect_ident("'u:' or 'v:'");
    if (header.text != "u" && header.text != "v")
      throw ParseError(header.loc, "found '" + header.text + "'",
                       {"'u'", "'v'"});
    bool is_u = header.text == "u";
    if ((is_u && seen_u) || (!is_u && seen_v))
      throw ParseError(header.loc, "duplicate channel '" + header.text + "'");
    (is_u ? seen_u : seen_v) = true;
    p.expect(Tok::Colon, "':'");
    p.end_of_line();
    p.skip_newlines();

    auto& pieces = is_u ? doc.u_pieces : doc.v_pieces;
    Rat cursor(0);
    while (p.lexer_.peek().kind == Tok::Ident &&
           p.lexer_.peek().text == "piece") {
      Token piece_kw = p.lexer_.take();
      Rat from = p.expect_rational();
      p.expect(Tok::DotDot, "'..'");
      Rat to = p.expect_rational();
      p.expect(Tok::Colon, "':'");
      if (from != cursor)
        throw ParseError(piece_kw.loc,
                         "piece must start at " + to_string(cursor) +
                             ", the end of the previous piece");
      if (!(to > from))
        throw ParseError(piece_kw.loc, "piece range must be increasing");
      if (to > doc.horizon)
        throw ParseError(piece_kw.loc, "piece extends beyond the horizon");
      Poly expr = p.parse_expr(variables, nvars);
      pieces.emplace_back(to, expr);
      cursor = to;
      p.end_of_line();
      p.skip_newlines();
    }
    if (pieces.empty())
      throw ParseError(header.loc,
                       "channel '" + header.text + "' has no pieces");
    if (cursor != doc.horizon)
      throw ParseError(header.loc, "pieces of channel '" + header.text +
                                       "' stop at " + to_string(cursor) +
                                       " instead of the horizon");
  }
  if (!p.at_end())
    throw ParseError(p.lexer_.peek().loc,
                     "found '" + p.lexer_.peek().text + "'",
                     {"end of input"});
  return doc;
}

namespace {

signals::PiecewisePoly channel_to_piecewise(
    const std::vector<std::pair<Rat, Poly>>& pieces, const Rat& horizon,
    const std::vector<Rat>& param_values) {
  std::vector<Rat> breaks{Rat(0)};
  std::vector<signals::Poly1> polys;
  for (const auto& [to, expr] : pieces) {
    // Substitute parameters; the remaining variable is s.
    Poly flat = substitute_params(expr, 1, param_values);
    std::vector<Rat> coeffs;
    for (const auto& [mono, coef] : flat.terms()) {
      unsigned e = mono.exps[0];
      if (coeffs.size() <= e) coeffs.resize(e + 1, Rat(0));
      coeffs[e] = coef;
    }
    polys.push_back(signals::Poly1(std::move(coeffs)));
    breaks.push_back(to);
  }
  (void)horizon;
  return signals::PiecewisePoly(std::move(breaks), std::move(polys));
}

}  // namespace

signals::ControlPair ControlDocument::to_controls(
    const std::vector<std::pair<std::string, Rat>>& overrides) const {
  std::vector<Rat> values = resolve_params(params, overrides);
  return signals::ControlPair(
      channel_to_piecewise(u_pieces, horizon, values),
      channel_to_piecewise(v_pieces, horizon, values));
}

std::string ControlDocument::pretty() const {
  std::ostringstream os;
  os << "controls " << name << " horizon " << to_string(horizon) << "\n";
  for (const auto& [pname, value] : params)
    os << "param " << pname << " = " << to_string(value) << "\n";
  std::vector<std::string> var_names{"s"};
  for (const auto& [pname, value] : params) var_names.push_back(pname);
  for (int channel = 0; channel < 2; ++channel) {
    const auto& pieces = channel == 0 ? u_pieces : v_pieces;
    os << (channel == 0 ? "u:\n" : "v:\n");
    Rat cursor(0);
    for (const auto& [to, expr] : pieces) {
      os << "  piece " << to_string(cursor) << ".." << to_string(to) << ": "
         << expr.str(var_names) << "\n";
      cursor = to;
    }
  }
  return os.str();
}

freelie::Bracket parse_bracket_spec(freelie::BracketPool& pool,
                                    const std::string& text) {
  std::string trimmed;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
  if (trimmed.empty())
    throw InvalidParamsError("empty bracket spec");
  if (trimmed[0] == '(' || (trimmed.size() == 2 && trimmed[0] == 'X'))
    return freelie::parse_bracket(pool, trimmed);

  // Family form: KIND [j=N] [l=N].
  std::istringstream is(text);
  std::string kind;
  is >> kind;
  int j = -1, l = 0;
  std::string item;
  while (is >> item) {
    if (item.rfind("j=", 0) == 0)
      j = std::stoi(item.substr(2));
    else if (item.rfind("l=", 0) == 0)
      l = std::stoi(item.substr(2));
    else
      throw InvalidParamsError("bad bracket spec item '" + item + "'");
  }
  auto make = [&](freelie::FamilyKind k, int default_j) {
    int jj = j < 0 ? default_j : j;
    switch (k) {
      case freelie::FamilyKind::M1:
        return pool.bracket_int(pool.x1(), jj);
      case freelie::FamilyKind::M2:
        return pool.bracket_int(pool.x2(), jj);
      case freelie::FamilyKind::W1:
        if (jj < 1) throw InvalidParamsError("W families need j >= 1");
        return pool.bracket_int(
            pool.pair(pool.bracket_int(pool.x1(), jj - 1),
                      pool.bracket_int(pool.x1(), jj)),
            l);
      case freelie::FamilyKind::W2:
        if (jj < 1) throw InvalidParamsError("W families need j >= 1");
        return pool.bracket_int(
            pool.pair(pool.bracket_int(pool.x2(), jj - 1),
                      pool.bracket_int(pool.x2(), jj)),
            l);
      case freelie::FamilyKind::C: {
        freelie::Bracket u = pool.bracket_int(pool.x1(), (jj + 1) / 2);
        freelie::Bracket v = pool.bracket_int(pool.x2(), jj / 2);
        freelie::Bracket core =
            (jj % 2 == 0) ? pool.pair(u, v) : pool.pair(v, u);
        return pool.bracket_int(core, l);
      }
    }
    throw InvalidParamsError("unreachable");
  };
  if (kind == "M1") return make(freelie::FamilyKind::M1, 0);
  if (kind == "M2") return make(freelie::FamilyKind::M2, 0);
  if (kind == "W1") return make(freelie::FamilyKind::W1, 1);
  if (kind == "W2") return make(freelie::FamilyKind::W2, 1);
  if (kind == "C") return make(freelie::FamilyKind::C, 0);
  throw InvalidParamsError("unknown bracket spec '" + text +
                           "'; use a family like 'W1 j=1 l=0', a generator "
                           "like 'X1', or a parenthesized tree");
}

}  // namespace stlc::cli

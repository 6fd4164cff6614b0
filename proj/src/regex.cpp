#include "autalg/regex.hpp"

#include <cctype>
#include <map>

namespace autalg {

void RegExpr::require_idempotent(const SemiringSpec& spec, const char* op) {
  if (!spec.idempotent_plus() && !spec.approx())
    throw NonIdempotentStar(std::string(op) + ": plus of '" + spec.name() +
                            "' is neither idempotent nor approximate");
}

void RegExpr::require_compatible(const RegExpr& a, const RegExpr& b, const char* op) {
  if (!same_spec(*a.spec_, *b.spec_))
    throw SpecMismatch(std::string(op) + ": specs '" + a.spec_->name() + "' and '" +
                       b.spec_->name() + "' differ");
  if (*a.alphabet_ != *b.alphabet_) throw AlphabetMismatch(std::string(op) + ": alphabets differ");
}

RegExpr RegExpr::atom(SpecPtr spec, std::vector<Symbol> alphabet, Symbol sym) {
  Value one = spec->one();
  return atom(std::move(spec), std::move(alphabet), std::move(sym), one);
}

RegExpr RegExpr::atom(SpecPtr spec, std::vector<Symbol> alphabet, Symbol sym, Value w) {
  bool known = false;
  for (const Symbol& a : alphabet) known = known || a == sym;
  if (!known) throw UnknownSymbol("atom: symbol '" + sym + "' not in alphabet");
  if (!spec->in_carrier(w))
    throw ValidationError("atom: weight " + spec->format(w) + " is not a carrier value");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Atom;
  node->sym = std::move(sym);
  node->weight = w;
  return RegExpr(std::move(node), std::move(spec),
                 std::make_shared<const std::vector<Symbol>>(std::move(alphabet)));
}

RegExpr RegExpr::unit(SpecPtr spec, std::vector<Symbol> alphabet) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Unit;
  return RegExpr(std::move(node), std::move(spec),
                 std::make_shared<const std::vector<Symbol>>(std::move(alphabet)));
}

RegExpr RegExpr::zero(SpecPtr spec, std::vector<Symbol> alphabet) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Zero;
  return RegExpr(std::move(node), std::move(spec),
                 std::make_shared<const std::vector<Symbol>>(std::move(alphabet)));
}

RegExpr RegExpr::union_of(RegExpr a, RegExpr b) {
  require_compatible(a, b, "union");
  require_idempotent(*a.spec_, "union");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Union;
  node->left = a.node_;
  node->right = b.node_;
  return RegExpr(std::move(node), a.spec_, a.alphabet_);
}

RegExpr RegExpr::comp(RegExpr a, RegExpr b) {
  require_compatible(a, b, "comp");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Comp;
  node->left = a.node_;
  node->right = b.node_;
  return RegExpr(std::move(node), a.spec_, a.alphabet_);
}

RegExpr RegExpr::star_of(RegExpr e) {
  require_idempotent(*e.spec_, "star");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Star;
  node->left = e.node_;
  return RegExpr(std::move(node), e.spec_, e.alphabet_);
}

std::string RegExpr::to_string() const {
  switch (kind()) {
    case Kind::Atom: {
      const SemiringSpec& s = *spec_;
      if (s.eq(node_->weight, s.one())) return node_->sym;
      return node_->sym + "{" + s.format(node_->weight) + "}";
    }
    case Kind::Unit:
      return "1";
    case Kind::Zero:
      return "0";
    case Kind::Union:
      return "(" + left().to_string() + "|" + right().to_string() + ")";
    case Kind::Comp:
      return "(" + left().to_string() + "." + right().to_string() + ")";
    case Kind::Star:
      return "(" + left().to_string() + ")*";
  }
  return "?";
}

RegularWordMap compile(const RegExpr& e) {
  const SpecPtr& spec = e.spec();
  const std::vector<Symbol>& alphabet = e.alphabet();
  switch (e.kind()) {
    case RegExpr::Kind::Atom: {
      std::vector<KMatrix> letters(alphabet.size(), zero_matrix(spec, 2, 2));
      for (size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == e.symbol()) letters[i].set(0, 1, e.atom_weight());
      KMatrix finals(spec, 2, 1);
      finals.set(1, 0, spec->one());
      WordAutomaton automaton(spec, 2, alphabet, std::move(letters), std::nullopt,
                              std::move(finals));
      return {{0}, std::move(automaton)};
    }
    case RegExpr::Kind::Unit:
      return unit_regular(spec, alphabet, 1);
    case RegExpr::Kind::Zero: {
      std::vector<KMatrix> letters(alphabet.size(), zero_matrix(spec, 1, 1));
      WordAutomaton automaton(spec, 1, alphabet, std::move(letters), std::nullopt,
                              zero_matrix(spec, 1, 1));
      return {{0}, std::move(automaton)};
    }
    case RegExpr::Kind::Comp:
      return compose_regular(compile(e.left()), compile(e.right()));
    case RegExpr::Kind::Union: {
      RegularWordMap a = compile(e.left());
      RegularWordMap b = compile(e.right());
      const size_t n1 = a.automaton.size(), n2 = b.automaton.size();
      const size_t n = n1 + n2 + 1;  // fresh fan-out entry goes last
      std::vector<KMatrix> letters(alphabet.size(), zero_matrix(spec, n, n));
      for (size_t li = 0; li < alphabet.size(); ++li) {
        for (size_t i = 0; i < n1; ++i)
          for (size_t j = 0; j < n1; ++j) letters[li].set(i, j, a.automaton.letter_at(li).at(i, j));
        for (size_t i = 0; i < n2; ++i)
          for (size_t j = 0; j < n2; ++j)
            letters[li].set(n1 + i, n1 + j, b.automaton.letter_at(li).at(i, j));
      }
      KMatrix eps(spec, n, n);
      if (a.automaton.has_eps())
        for (size_t i = 0; i < n1; ++i)
          for (size_t j = 0; j < n1; ++j) eps.set(i, j, a.automaton.eps().at(i, j));
      if (b.automaton.has_eps())
        for (size_t i = 0; i < n2; ++i)
          for (size_t j = 0; j < n2; ++j) eps.set(n1 + i, n1 + j, b.automaton.eps().at(i, j));
      eps.set(n - 1, a.entries[0], spec->one());
      eps.set(n - 1, n1 + b.entries[0], spec->one());
      KMatrix finals(spec, n, 1);
      for (size_t i = 0; i < n1; ++i) finals.set(i, 0, a.automaton.finals().at(i, 0));
      for (size_t i = 0; i < n2; ++i) finals.set(n1 + i, 0, b.automaton.finals().at(i, 0));
      WordAutomaton automaton(spec, n, alphabet, std::move(letters), std::move(eps),
                              std::move(finals));
      return {{n - 1}, std::move(automaton)};
    }
    case RegExpr::Kind::Star: {
      // A fresh entry keeps the iteration sound: reusing the body's entry
      // state miscounts once an inner star has already wired returns into it
      // (then ((x*.y)*)* admits bare x), and keeping the body's exit weights
      // double-counts paths over non-idempotent coefficients. Every accepted
      // round trips body-entry -> exit-return -> fresh entry, which alone
      // carries weight one.
      RegularWordMap a = compile(e.left());
      const size_t n = a.automaton.size() + 1;
      const size_t fresh = n - 1;
      std::vector<KMatrix> letters;
      for (size_t li = 0; li < alphabet.size(); ++li) {
        KMatrix m(spec, n, n);
        for (size_t i = 0; i + 1 < n; ++i)
          for (size_t j = 0; j + 1 < n; ++j) m.set(i, j, a.automaton.letter_at(li).at(i, j));
        letters.push_back(std::move(m));
      }
      KMatrix eps(spec, n, n);
      if (a.automaton.has_eps())
        for (size_t i = 0; i + 1 < n; ++i)
          for (size_t j = 0; j + 1 < n; ++j) eps.set(i, j, a.automaton.eps().at(i, j));
      for (size_t x = 0; x + 1 < n; ++x) eps.set(x, fresh, a.automaton.finals().at(x, 0));
      eps.set(fresh, a.entries[0], spec->one());
      KMatrix finals(spec, n, 1);
      finals.set(fresh, 0, spec->one());
      WordAutomaton automaton(spec, n, alphabet, std::move(letters), std::move(eps),
                              std::move(finals));
      return {{fresh}, std::move(automaton)};
    }
  }
  throw Error("compile: unreachable");
}

namespace {

using Slice = std::vector<Value>;  // indexed like words_up_to

struct Denoter {
  const SemiringSpec& s;
  const std::vector<Word>& words;
  std::map<Word, size_t> index;
  size_t max_len;

  Slice zeroes() const { return Slice(words.size(), s.zero()); }

  Slice comp(const Slice& a, const Slice& b) const {
    Slice out = zeroes();
    for (size_t wi = 0; wi < words.size(); ++wi) {
      const Word& w = words[wi];
      Value acc = s.zero();
      for (size_t cut = 0; cut <= w.size(); ++cut) {
        Word u(w.begin(), w.begin() + static_cast<long>(cut));
        Word v(w.begin() + static_cast<long>(cut), w.end());
        acc = s.plus(acc, s.times(a[index.at(u)], b[index.at(v)]));
      }
      out[wi] = acc;
    }
    return out;
  }

  Slice eval(const RegExpr& e) const {
    switch (e.kind()) {
      case RegExpr::Kind::Zero:
        return zeroes();
      case RegExpr::Kind::Unit: {
        Slice out = zeroes();
        out[index.at({})] = s.one();
        return out;
      }
      case RegExpr::Kind::Atom: {
        Slice out = zeroes();
        if (max_len >= 1) out[index.at(Word{e.symbol()})] = e.atom_weight();
        return out;
      }
      case RegExpr::Kind::Union: {
        Slice a = eval(e.left());
        Slice b = eval(e.right());
        for (size_t i = 0; i < a.size(); ++i) a[i] = s.plus(a[i], b[i]);
        return a;
      }
      case RegExpr::Kind::Comp:
        return comp(eval(e.left()), eval(e.right()));
      case RegExpr::Kind::Star: {
        Slice body = eval(e.left());
        Slice power = zeroes();
        power[index.at({})] = s.one();  // the empty power
        Slice acc = power;
        for (size_t k = 1; k <= max_len; ++k) {
          power = comp(power, body);
          for (size_t i = 0; i < acc.size(); ++i) acc[i] = s.plus(acc[i], power[i]);
        }
        return acc;
      }
    }
    return zeroes();
  }
};

}  // namespace

std::vector<std::pair<Word, Value>> denote_slice(const RegExpr& e, size_t max_len) {
  std::vector<Word> words = words_up_to(e.alphabet(), max_len);
  Denoter denoter{*e.spec(), words, {}, max_len};
  for (size_t i = 0; i < words.size(); ++i) denoter.index.emplace(words[i], i);
  Slice values = denoter.eval(e);
  std::vector<std::pair<Word, Value>> out;
  for (size_t i = 0; i < words.size(); ++i) out.emplace_back(words[i], values[i]);
  return out;
}

namespace {

struct RegexParser {
  SpecPtr spec;
  const std::vector<Symbol>& alphabet;
  const std::string& text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("regex: " + message + " at offset " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  RegExpr expression() {
    RegExpr e = term();
    while (eat('|')) e = RegExpr::union_of(std::move(e), term());
    return e;
  }

  RegExpr term() {
    RegExpr e = factor();
    while (eat('.')) e = RegExpr::comp(std::move(e), factor());
    return e;
  }

  RegExpr factor() {
    RegExpr e = primary();
    while (eat('*')) e = RegExpr::star_of(std::move(e));
    return e;
  }

  RegExpr primary() {
    skip_ws();
    if (eat('(')) {
      RegExpr e = expression();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (pos >= text.size()) fail("expected an expression");
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) fail(std::string("unexpected character '") + text[pos] + "'");
    std::string token = text.substr(start, pos - start);
    if (token == "0") return RegExpr::zero(spec, alphabet);
    if (token == "1") return RegExpr::unit(spec, alphabet);
    if (eat('{')) {
      size_t wstart = pos;
      while (pos < text.size() && text[pos] != '}') ++pos;
      if (pos >= text.size()) fail("expected '}'");
      std::string wtext = text.substr(wstart, pos - wstart);
      ++pos;
      auto w = spec->parse(wtext);
      if (!w) fail("bad weight '" + wtext + "' for spec '" + spec->name() + "'");
      return RegExpr::atom(spec, alphabet, token, *w);
    }
    return RegExpr::atom(spec, alphabet, token);
  }
};

}  // namespace

RegExpr parse_regex(SpecPtr spec, const std::vector<Symbol>& alphabet, const std::string& text) {
  RegexParser parser{std::move(spec), alphabet, text};
  RegExpr e = parser.expression();
  parser.skip_ws();
  if (parser.pos != text.size()) parser.fail("trailing input");
  return e;
}

}  // namespace autalg

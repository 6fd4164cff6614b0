#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "autalg/word.hpp"

namespace autalg {

/// Regular expressions over a fixed spec and alphabet: weighted one-letter
/// atoms, the unit and zero languages, union, sequential composition and
/// star. Union and star need an idempotent plus (or an approx spec whose
/// star converges); building them otherwise throws NonIdempotentStar.
class RegExpr {
 public:
  enum class Kind { Atom, Unit, Zero, Union, Comp, Star };

  static RegExpr atom(SpecPtr spec, std::vector<Symbol> alphabet, Symbol sym);
  static RegExpr atom(SpecPtr spec, std::vector<Symbol> alphabet, Symbol sym, Value w);
  static RegExpr unit(SpecPtr spec, std::vector<Symbol> alphabet);
  static RegExpr zero(SpecPtr spec, std::vector<Symbol> alphabet);
  static RegExpr union_of(RegExpr a, RegExpr b);
  static RegExpr comp(RegExpr a, RegExpr b);
  static RegExpr star_of(RegExpr e);

  Kind kind() const { return node_->kind; }
  const Symbol& symbol() const { return node_->sym; }
  Value atom_weight() const { return node_->weight; }
  RegExpr left() const { return RegExpr(node_->left, spec_, alphabet_); }
  RegExpr right() const { return RegExpr(node_->right, spec_, alphabet_); }
  const SpecPtr& spec() const { return spec_; }
  const std::vector<Symbol>& alphabet() const { return *alphabet_; }

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    Symbol sym;
    Value weight = 0;
    std::shared_ptr<const Node> left, right;
  };
  using NodePtr = std::shared_ptr<const Node>;
  using AlphabetPtr = std::shared_ptr<const std::vector<Symbol>>;

  RegExpr(NodePtr node, SpecPtr spec, AlphabetPtr alphabet)
      : node_(std::move(node)), spec_(std::move(spec)), alphabet_(std::move(alphabet)) {}

  static void require_idempotent(const SemiringSpec& spec, const char* op);
  static void require_compatible(const RegExpr& a, const RegExpr& b, const char* op);

  NodePtr node_;
  SpecPtr spec_;
  AlphabetPtr alphabet_;
};

/// Compiles to a one-entry, one-exit regular map whose language slice agrees
/// with denote_slice at every length: atoms become a single edge, union a
/// fresh fan-out entry of internal moves, composition the regular-map
/// composition, and star internal moves from the exit weights back to the
/// entry with the entry made accepting at weight one.
RegularWordMap compile(const RegExpr& e);

/// Direct denotation on words of length <= max_len, in canonical word order:
/// pointwise plus for union, split-sums over factorizations for composition,
/// and powers up to max_len for star.
std::vector<std::pair<Word, Value>> denote_slice(const RegExpr& e, size_t max_len);

/// Concrete syntax: `0`, `1`, symbols with optional weight braces `a{2}`,
/// `e1|e2`, `e1.e2`, `e*`, parentheses. Star binds tighter than `.`, which
/// binds tighter than `|`.
RegExpr parse_regex(SpecPtr spec, const std::vector<Symbol>& alphabet, const std::string& text);

}  // namespace autalg

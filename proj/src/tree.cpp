#include "autalg/tree.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace autalg {

Tree Tree::leaf(size_t var) {
  auto node = std::make_shared<Node>();
  node->leaf = true;
  node->var = var;
  node->var_arity = var + 1;
  return Tree(std::move(node));
}

Tree Tree::node(Tree left, Symbol sym, Tree right) {
  auto node = std::make_shared<Node>();
  node->leaf = false;
  node->sym = std::move(sym);
  node->height = 1 + std::max(left.height(), right.height());
  node->var_arity = std::max(left.var_arity(), right.var_arity());
  node->left = left.node_;
  node->right = right.node_;
  return Tree(std::move(node));
}

Tree Tree::substitute(const std::vector<Tree>& leaf_trees) const {
  if (is_leaf()) {
    if (var() >= leaf_trees.size())
      throw VariableOutOfRange("substitute: leaf x" + std::to_string(var()) + " has " +
                               std::to_string(leaf_trees.size()) + " replacements");
    return leaf_trees[var()];
  }
  return node(left().substitute(leaf_trees), symbol(), right().substitute(leaf_trees));
}

std::string Tree::to_string() const {
  if (is_leaf()) return "x" + std::to_string(var());
  return "(" + symbol() + " " + left().to_string() + " " + right().to_string() + ")";
}

namespace {

struct TermParser {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError("term: " + message + " at offset " + std::to_string(pos));
  }

  std::string token() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (start == pos) fail("expected a token");
    return text.substr(start, pos - start);
  }

  Tree term() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      std::string sym = token();
      Tree l = term();
      Tree r = term();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return Tree::node(std::move(l), std::move(sym), std::move(r));
    }
    std::string t = token();
    if (t.size() < 2 || t[0] != 'x') fail("expected a leaf x<j> or '('");
    for (size_t i = 1; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) fail("bad leaf '" + t + "'");
    if (t.size() > 10) fail("leaf index out of range in '" + t + "'");
    return Tree::leaf(std::stoul(t.substr(1)));
  }
};

}  // namespace

Tree Tree::parse(const std::string& text) {
  TermParser parser{text};
  Tree t = parser.term();
  parser.skip_ws();
  if (parser.pos != text.size()) parser.fail("trailing input");
  return t;
}

bool Tree::operator==(const Tree& other) const {
  if (node_ == other.node_) return true;
  if (is_leaf() != other.is_leaf()) return false;
  if (is_leaf()) return var() == other.var();
  return symbol() == other.symbol() && left() == other.left() && right() == other.right();
}

bool Tree::operator<(const Tree& other) const {
  if (is_leaf() != other.is_leaf()) return is_leaf();
  if (is_leaf()) return var() < other.var();
  if (symbol() != other.symbol()) return symbol() < other.symbol();
  if (!(left() == other.left())) return left() < other.left();
  return right() < other.right();
}

TreeAutomaton::TreeAutomaton(SpecPtr spec, size_t n, std::vector<Symbol> alphabet,
                             std::vector<Rule> rules, KMatrix finals,
                             std::vector<std::string> labels)
    : spec_(std::move(spec)),
      n_(n),
      alphabet_(std::move(alphabet)),
      finals_(std::move(finals)),
      labels_(std::move(labels)) {
  for (size_t i = 0; i < alphabet_.size(); ++i)
    for (size_t j = i + 1; j < alphabet_.size(); ++j)
      if (alphabet_[i] == alphabet_[j])
        throw ValidationError("TreeAutomaton: duplicate symbol '" + alphabet_[i] + "'");
  if (!same_spec(*finals_.spec(), *spec_))
    throw SpecMismatch("TreeAutomaton: finals use spec '" + finals_.spec()->name() + "'");
  if (finals_.rows() != n_)
    throw DimensionMismatch("TreeAutomaton: finals have " + std::to_string(finals_.rows()) +
                            " rows for " + std::to_string(n_) + " states");
  delta_.assign(alphabet_.size(), std::vector<Value>(n_ * n_ * n_, spec_->zero()));
  for (const Rule& r : rules) {
    auto sym = symbol_index(r.sym);
    if (!sym) throw UnknownSymbol("TreeAutomaton: symbol '" + r.sym + "' not in alphabet");
    if (r.src >= n_ || r.left >= n_ || r.right >= n_)
      throw IndexOutOfRange("TreeAutomaton: rule references a state beyond " + std::to_string(n_));
    if (!spec_->in_carrier(r.weight))
      throw ValidationError("TreeAutomaton: weight " + spec_->format(r.weight) +
                            " is not a carrier value");
    Value& slot = delta_[*sym][(r.src * n_ + r.left) * n_ + r.right];
    slot = spec_->plus(slot, r.weight);
  }
  if (labels_.empty())
    for (size_t i = 0; i < n_; ++i) labels_.push_back("q" + std::to_string(i));
  if (labels_.size() != n_)
    throw DimensionMismatch("TreeAutomaton: " + std::to_string(labels_.size()) + " labels for " +
                            std::to_string(n_) + " states");
}

std::optional<size_t> TreeAutomaton::symbol_index(const Symbol& a) const {
  for (size_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_[i] == a) return i;
  return std::nullopt;
}

Value TreeAutomaton::delta(size_t q, const Symbol& sym, size_t left, size_t right) const {
  auto i = symbol_index(sym);
  if (!i) throw UnknownSymbol("symbol '" + sym + "' not in alphabet");
  return delta_at(*i, q, left, right);
}

Value TreeAutomaton::delta_at(size_t sym_index, size_t q, size_t left, size_t right) const {
  return delta_[sym_index][(q * n_ + left) * n_ + right];
}

std::vector<TreeAutomaton::Rule> TreeAutomaton::rules() const {
  std::vector<Rule> out;
  for (size_t si = 0; si < alphabet_.size(); ++si)
    for (size_t q = 0; q < n_; ++q)
      for (size_t l = 0; l < n_; ++l)
        for (size_t r = 0; r < n_; ++r) {
          Value w = delta_at(si, q, l, r);
          if (!spec_->eq(w, spec_->zero())) out.push_back({q, alphabet_[si], l, r, w});
        }
  return out;
}

bool TreeAutomaton::operator==(const TreeAutomaton& other) const {
  if (!same_spec(*spec_, *other.spec_) || n_ != other.n_ || alphabet_ != other.alphabet_ ||
      labels_ != other.labels_ || finals_.cols() != other.finals_.cols())
    return false;
  if (!matrix_eq(finals_, other.finals_)) return false;
  for (size_t si = 0; si < delta_.size(); ++si)
    for (size_t i = 0; i < delta_[si].size(); ++i)
      if (!spec_->eq(delta_[si][i], other.delta_[si][i])) return false;
  return true;
}

std::vector<Value> eval_tree_with(const TreeAutomaton& a, const Tree& t,
                                  const KMatrix& leaf_values) {
  const SemiringSpec& s = *a.spec();
  if (t.is_leaf()) {
    if (t.var() >= leaf_values.cols())
      throw VariableOutOfRange("eval_tree: leaf x" + std::to_string(t.var()) + " exceeds arity " +
                               std::to_string(leaf_values.cols()));
    return leaf_values.col(t.var());
  }
  auto sym = a.symbol_index(t.symbol());
  if (!sym) throw UnknownSymbol("symbol '" + t.symbol() + "' not in alphabet");
  std::vector<Value> vl = eval_tree_with(a, t.left(), leaf_values);
  std::vector<Value> vr = eval_tree_with(a, t.right(), leaf_values);
  std::vector<Value> out(a.size(), s.zero());
  for (size_t q = 0; q < a.size(); ++q)
    for (size_t q1 = 0; q1 < a.size(); ++q1)
      for (size_t q2 = 0; q2 < a.size(); ++q2) {
        Value w = a.delta_at(*sym, q, q1, q2);
        if (s.eq(w, s.zero())) continue;
        out[q] = s.plus(out[q], s.times(s.times(w, vl[q1]), vr[q2]));
      }
  return out;
}

std::vector<Value> eval_tree(const TreeAutomaton& a, const Tree& t) {
  return eval_tree_with(a, t, a.finals());
}

Value accepts(const TreeAutomaton& a, size_t state, const Tree& t) {
  if (state >= a.size())
    throw IndexOutOfRange("accepts: state " + std::to_string(state) + " of " +
                          std::to_string(a.size()));
  return eval_tree(a, t)[state];
}

namespace {

/// Enumerates complete run labelings; the running product is threaded down so
/// zero-weight steps cut the branch.
Value run_sum(const TreeAutomaton& a, const Tree& t, size_t state, Value prefix) {
  const SemiringSpec& s = *a.spec();
  if (t.is_leaf()) {
    if (t.var() >= a.exit_arity())
      throw VariableOutOfRange("brute_force_accepts: leaf x" + std::to_string(t.var()) +
                               " exceeds arity " + std::to_string(a.exit_arity()));
    return s.times(prefix, a.finals().at(state, t.var()));
  }
  auto sym = a.symbol_index(t.symbol());
  if (!sym) throw UnknownSymbol("symbol '" + t.symbol() + "' not in alphabet");
  Value acc = s.zero();
  for (size_t q1 = 0; q1 < a.size(); ++q1)
    for (size_t q2 = 0; q2 < a.size(); ++q2) {
      Value w = a.delta_at(*sym, state, q1, q2);
      if (s.eq(w, s.zero())) continue;
      Value left = run_sum(a, t.left(), q1, s.times(prefix, w));
      if (s.eq(left, s.zero())) continue;
      acc = s.plus(acc, run_sum(a, t.right(), q2, left));
    }
  return acc;
}

}  // namespace

Value brute_force_accepts(const TreeAutomaton& a, size_t state, const Tree& t) {
  if (state >= a.size())
    throw IndexOutOfRange("brute_force_accepts: state " + std::to_string(state) + " of " +
                          std::to_string(a.size()));
  return run_sum(a, t, state, a.spec()->one());
}

std::vector<Tree> trees_up_to(const std::vector<Symbol>& alphabet, size_t vars, size_t max_height,
                              size_t cap) {
  std::vector<Tree> all;
  for (size_t j = 0; j < vars; ++j) all.push_back(Tree::leaf(j));
  if (all.size() > cap) throw ResultTooLarge("trees_up_to: more than " + std::to_string(cap) + " trees");
  for (size_t h = 1; h <= max_height; ++h) {
    const size_t prev_size = all.size();  // everything of height < h
    for (const Symbol& sym : alphabet)
      for (size_t li = 0; li < prev_size; ++li)
        for (size_t ri = 0; ri < prev_size; ++ri) {
          if (std::max(all[li].height(), all[ri].height()) + 1 != h) continue;
          all.push_back(Tree::node(all[li], sym, all[ri]));
          if (all.size() > cap)
            throw ResultTooLarge("trees_up_to: more than " + std::to_string(cap) + " trees");
        }
  }
  return all;
}

std::vector<std::pair<Tree, std::vector<Value>>> saturation_slice_trees(const TreeAutomaton& a,
                                                                        size_t state,
                                                                        size_t max_height,
                                                                        size_t cap) {
  const SemiringSpec& s = *a.spec();
  const KMatrix leaf_values = identity(a.spec(), a.size());
  std::vector<std::pair<Tree, std::vector<Value>>> out;
  for (const Tree& t : trees_up_to(a.alphabet(), a.size(), max_height, cap)) {
    std::vector<Value> v = eval_tree_with(a, t, leaf_values);
    if (!s.eq(v[state], s.zero())) out.emplace_back(t, std::move(v));
  }
  return out;
}

}  // namespace autalg

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "autalg/kmatrix.hpp"
#include "autalg/word.hpp"

namespace autalg {

/// A complete binary tree: inner nodes carry a symbol and exactly two
/// children, leaves carry a variable index. Values share structure and are
/// immutable.
///
/// Concrete syntax: `x<j>` for leaves, `(<sym> <left> <right>)` for nodes.
class Tree {
 public:
  static Tree leaf(size_t var);
  static Tree node(Tree left, Symbol sym, Tree right);

  bool is_leaf() const { return node_->leaf; }
  size_t var() const { return node_->var; }
  const Symbol& symbol() const { return node_->sym; }
  Tree left() const { return Tree(node_->left); }
  Tree right() const { return Tree(node_->right); }
  size_t height() const { return node_->height; }

  /// Largest variable index plus one (0 for variable-free trees).
  size_t var_arity() const { return node_->var_arity; }

  /// Replaces leaf j by leaf_trees[j]; throws VariableOutOfRange when a leaf
  /// has no replacement.
  Tree substitute(const std::vector<Tree>& leaf_trees) const;

  std::string to_string() const;
  static Tree parse(const std::string& text);  ///< throws ParseError

  bool operator==(const Tree& other) const;
  bool operator<(const Tree& other) const;

 private:
  struct Node {
    bool leaf;
    size_t var = 0;
    Symbol sym;
    std::shared_ptr<const Node> left, right;
    size_t height = 0;
    size_t var_arity = 0;
  };
  explicit Tree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A tree automaton over a semiring: a weighted ternary transition
/// (state, symbol) -> pairs of states, plus an n x p matrix of leaf/exit
/// weights. Duplicate rules accumulate with plus.
class TreeAutomaton {
 public:
  struct Rule {
    size_t src;
    Symbol sym;
    size_t left, right;
    Value weight;
  };

  TreeAutomaton(SpecPtr spec, size_t n, std::vector<Symbol> alphabet, std::vector<Rule> rules,
                KMatrix finals, std::vector<std::string> labels = {});

  const SpecPtr& spec() const { return spec_; }
  size_t size() const { return n_; }
  const std::vector<Symbol>& alphabet() const { return alphabet_; }
  std::optional<size_t> symbol_index(const Symbol& a) const;
  Value delta(size_t q, const Symbol& sym, size_t left, size_t right) const;
  Value delta_at(size_t sym_index, size_t q, size_t left, size_t right) const;
  /// Nonzero transitions in canonical order (symbol, src, left, right).
  std::vector<Rule> rules() const;
  const KMatrix& finals() const { return finals_; }
  size_t exit_arity() const { return finals_.cols(); }
  const std::string& label(size_t state) const { return labels_[state]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const TreeAutomaton& other) const;

 private:
  SpecPtr spec_;
  size_t n_;
  std::vector<Symbol> alphabet_;
  std::vector<std::vector<Value>> delta_;  // per symbol, dense n*n*n
  KMatrix finals_;
  std::vector<std::string> labels_;
};

/// Bottom-up value of t: a leaf with variable j evaluates to column j of the
/// leaf-value matrix, a node combines the children through the transition.
/// eval_tree uses the automaton's own exit weights as leaf values.
std::vector<Value> eval_tree_with(const TreeAutomaton& a, const Tree& t,
                                  const KMatrix& leaf_values);
std::vector<Value> eval_tree(const TreeAutomaton& a, const Tree& t);

Value accepts(const TreeAutomaton& a, size_t state, const Tree& t);

/// Independent oracle: the sum over all complete run labelings with the root
/// at `state` of the product of local transition weights times the exit
/// weights at the leaves. Zero-weight steps prune the enumeration.
Value brute_force_accepts(const TreeAutomaton& a, size_t state, const Tree& t);

/// All trees with state-indexed leaves up to max_height, each mapped to its
/// bottom-up value vector where leaf j denotes the unit at state j; trees are
/// listed iff their value at `state` is nonzero. Throws ResultTooLarge when
/// the enumeration exceeds `cap` trees.
std::vector<std::pair<Tree, std::vector<Value>>> saturation_slice_trees(const TreeAutomaton& a,
                                                                        size_t state,
                                                                        size_t max_height,
                                                                        size_t cap = 1000000);

/// All trees over `vars` leaf variables with height <= max_height, layered by
/// height. Throws ResultTooLarge past `cap`.
std::vector<Tree> trees_up_to(const std::vector<Symbol>& alphabet, size_t vars, size_t max_height,
                              size_t cap = 1000000);

}  // namespace autalg

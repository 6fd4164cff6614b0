#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autalg/tree.hpp"
#include "autalg/word.hpp"

namespace autalg {

/// Renders a subset bitmask as {q0,q2}-style text; bit q stands for state q.
std::string subset_to_string(uint32_t mask, size_t n);

/// A total function on the subsets of an n-element state set, tabulated over
/// all 2^n inputs in canonical binary order (subset S is the integer with bit
/// q set for each state q in S).
class StateSetFunction {
 public:
  StateSetFunction(size_t n, std::vector<uint32_t> table);
  static StateSetFunction identity(size_t n);
  static StateSetFunction constant(size_t n, uint32_t image);

  size_t state_count() const { return n_; }
  uint32_t apply(uint32_t subset) const { return table_[subset]; }
  const std::vector<uint32_t>& table() const { return table_; }

  bool monotone() const;

  bool operator==(const StateSetFunction& other) const {
    return n_ == other.n_ && table_ == other.table_;
  }
  bool operator<(const StateSetFunction& other) const { return table_ < other.table_; }

 private:
  size_t n_;
  std::vector<uint32_t> table_;
};

/// Plain function composition: apply g first, then f.
StateSetFunction compose_functions(const StateSetFunction& f, const StateSetFunction& g);

/// The hom-set closure generated from an automaton: elements in discovery
/// order, the identity first, letter/symbol generators carrying their names
/// and everything else named e<k>.
struct FiniteTheory {
  size_t n = 0;
  std::vector<StateSetFunction> elements;
  std::vector<std::string> names;

  std::optional<size_t> index_of(const StateSetFunction& f) const;
  std::optional<size_t> index_of_name(const std::string& name) const;
};

/// The predecessor operator of one letter with internal moves absorbed on
/// both sides: X maps to every state that can reach X by reading the letter.
/// Requires the boolean spec.
StateSetFunction word_letter_action(const WordAutomaton& a, const Symbol& sym);

/// X maps to every state with a transition under sym into (g1(X), g2(X)).
/// Requires the boolean spec.
StateSetFunction tree_combine(const TreeAutomaton& a, const Symbol& sym,
                              const StateSetFunction& g1, const StateSetFunction& g2);

/// Least set of state-set functions containing the identity and closed under
/// the instance's term formation: letter pre-composition for words, the full
/// binary combine for trees. Throws CapExceeded past `cap` elements.
FiniteTheory generate_theory(const WordAutomaton& a, size_t cap = 100000);
FiniteTheory generate_theory(const TreeAutomaton& a, size_t cap = 100000);

/// The theory element of one term: letters folded right to left for words,
/// structural recursion with leaves at the identity for trees (all leaves
/// must be the single variable x0).
StateSetFunction theory_morphism(const WordAutomaton& a, const Word& w);
StateSetFunction theory_morphism(const TreeAutomaton& a, const Tree& t);

/// Membership test through the theory: state is in the image of the final
/// set under the term's element. Requires exit arity 1; coincides with a
/// nonzero direct weight for the term.
bool recognize_membership(const WordAutomaton& a, size_t state, const Word& w);
bool recognize_membership(const TreeAutomaton& a, size_t state, const Tree& t);

/// Elements recognizing `state`: the membership variant { g | state in g(F) }
/// drives the semantics; the equality variant { g | g(F) = {state} } is
/// reported alongside for comparison.
struct RecognizingSubset {
  FiniteTheory theory;
  std::vector<size_t> membership;
  std::vector<size_t> equality;
};

RecognizingSubset recognizing_subset(const WordAutomaton& a, size_t state, size_t cap = 100000);
RecognizingSubset recognizing_subset(const TreeAutomaton& a, size_t state, size_t cap = 100000);

/// Final-state bitmask from column 0 of the exit weights.
uint32_t final_state_mask(const KMatrix& finals);

/// First column: input subsets in canonical binary order; one column per
/// element; header row carries the element names.
std::string render_theory_tsv(const FiniteTheory& theory);

}  // namespace autalg

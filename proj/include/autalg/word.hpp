#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autalg/kmatrix.hpp"

namespace autalg {

using Symbol = std::string;
using Word = std::vector<Symbol>;

std::string word_to_string(const Word& w);

/// All words of length <= max_len in canonical order: by length, then
/// lexicographically by symbol index.
std::vector<Word> words_up_to(const std::vector<Symbol>& alphabet, size_t max_len);

/// A word automaton over a semiring: one transition matrix per letter, an
/// optional matrix of internal moves, and an n x p matrix of exit weights
/// (p = 1 for plain acceptance). States are indexed 0..n-1; display labels
/// are kept for rendering only.
class WordAutomaton {
 public:
  WordAutomaton(SpecPtr spec, size_t n, std::vector<Symbol> alphabet,
                std::vector<KMatrix> letters, std::optional<KMatrix> eps, KMatrix finals,
                std::vector<std::string> labels = {});

  const SpecPtr& spec() const { return spec_; }
  size_t size() const { return n_; }
  const std::vector<Symbol>& alphabet() const { return alphabet_; }
  std::optional<size_t> symbol_index(const Symbol& a) const;
  const KMatrix& letter(const Symbol& a) const;  ///< throws UnknownSymbol
  const KMatrix& letter_at(size_t index) const { return letters_[index]; }
  bool has_eps() const { return eps_.has_value(); }
  const KMatrix& eps() const { return *eps_; }
  const KMatrix& finals() const { return finals_; }
  size_t exit_arity() const { return finals_.cols(); }
  const std::string& label(size_t state) const { return labels_[state]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const WordAutomaton& other) const;

 private:
  SpecPtr spec_;
  size_t n_;
  std::vector<Symbol> alphabet_;
  std::vector<KMatrix> letters_;
  std::optional<KMatrix> eps_;
  KMatrix finals_;
  std::vector<std::string> labels_;
};

/// Star of the internal-move matrix; the identity when there is none.
KMatrix eps_star(const WordAutomaton& a, size_t max_iter = 10000);

/// E* M(a1) E* M(a2) ... M(ak) E*: entry (i, j) is the total weight of i
/// reaching j while reading w, internal moves free. The empty word yields E*.
KMatrix run_dual(const WordAutomaton& a, const Word& w);
KMatrix run_dual(const WordAutomaton& a, const Word& w, const KMatrix& eps_closure);

/// Row `state` of run_dual(a, w) composed with the exit weights.
std::vector<Value> weight(const WordAutomaton& a, size_t state, const Word& w);

/// Independent oracle: the explicit sum over all state sequences reading w,
/// with at most eps_bound internal steps inserted at each position, of the
/// product of step weights times the exit weight.
std::vector<Value> brute_force_weight(const WordAutomaton& a, size_t state, const Word& w,
                                      size_t eps_bound);

/// Row `state` of run_dual for every word of length <= max_len, in canonical
/// word order.
std::vector<std::pair<Word, std::vector<Value>>> saturation_slice(const WordAutomaton& a,
                                                                  size_t state, size_t max_len);

/// Laws of the dual algebra action: run_dual of the empty word equals E*,
/// E* lies above the identity, E* absorbs itself (idempotent specs), and
/// run_dual(uv) = run_dual(u) ; run_dual(v) over the sampled words whenever
/// E* absorption holds for the instance.
LawReport check_em_laws(const WordAutomaton& a, const std::vector<Word>& words);

/// A regular map p -> q: a base-map entry into the states of an automaton
/// with exit arity q.
struct RegularWordMap {
  std::vector<size_t> entries;
  WordAutomaton automaton;

  size_t entry_arity() const { return entries.size(); }
  size_t exit_arity() const { return automaton.exit_arity(); }
};

/// q isolated states whose exit weights form the identity: weight one on the
/// empty word at the matching exit, zero everywhere else.
RegularWordMap unit_regular(SpecPtr spec, std::vector<Symbol> alphabet, size_t q);

/// Sequential composition on n1 + n2 states: internal moves from every
/// r1-state to each r2 entry, weighted by r1's exit weights; the composite
/// language is the split-sum of the two languages.
RegularWordMap compose_regular(const RegularWordMap& r1, const RegularWordMap& r2);

/// Disjoint union with stacked exits; entry j behaves exactly like r_j.
RegularWordMap cotuple_regular(const std::vector<RegularWordMap>& rs);

/// Renumbers states so the entries come first, in order of first appearance;
/// the behaviour is untouched. Keeps rendered automata predictable.
RegularWordMap entries_first(const RegularWordMap& r);

std::vector<Value> regular_weight(const RegularWordMap& r, size_t entry, const Word& w);

/// weight(entry, w) for every word of length <= max_len, canonical order.
std::vector<std::pair<Word, std::vector<Value>>> language_slice(const RegularWordMap& r,
                                                                size_t entry, size_t max_len);

}  // namespace autalg

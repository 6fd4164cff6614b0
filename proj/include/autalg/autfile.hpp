#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "autalg/tree.hpp"
#include "autalg/word.hpp"

namespace autalg {

/// A parsed automaton file: the automaton itself plus the named entry points
/// declared alongside it.
struct LoadedAutomaton {
  std::variant<WordAutomaton, TreeAutomaton> automaton;
  std::vector<std::pair<std::string, size_t>> entries;  // declaration order

  bool is_word() const { return std::holds_alternative<WordAutomaton>(automaton); }
  const WordAutomaton& word() const { return std::get<WordAutomaton>(automaton); }
  const TreeAutomaton& tree() const { return std::get<TreeAutomaton>(automaton); }
  const SpecPtr& spec() const;
  size_t states() const;

  bool operator==(const LoadedAutomaton& other) const {
    return automaton == other.automaton && entries == other.entries;
  }
};

/// Line-oriented format, one directive per line, `#` starts a comment:
///
///   kind word|tree
///   semiring boolean|natural|tropical|real|unit-interval|chain:<k>
///   alphabet <sym> <sym> ...
///   states <n>
///   edge <src> <sym|@eps|"word"> <dst> [<weight>]      (word automata)
///   edge <src> <sym> <left> <right> [<weight>]         (tree automata)
///   final <state> [<exit-index>] [<weight>]
///   entry <name> <state>
///   label <state> <display>
///
/// Weights default to one and parse in the declared semiring. A quoted word
/// label is desugared into a chain of fresh states carrying the weight on its
/// first step. Throws ParseError for malformed text and ValidationError when
/// indices or weights fall outside the declared automaton.
LoadedAutomaton parse_automaton(const std::string& text);

LoadedAutomaton load_automaton_file(const std::string& path);

/// Canonical rendering; reparsing yields an identical automaton.
std::string render_automaton(const LoadedAutomaton& loaded);

/// View of a word automaton file as a regular map: the declared entries in
/// order, or state 0 when none were declared.
RegularWordMap as_regular_map(const LoadedAutomaton& loaded);

/// Splits CLI word text against an alphabet: `@eps` or the empty string is
/// the empty word, whitespace-separated tokens are taken verbatim, and
/// otherwise the text is cut greedily into the longest matching symbols.
Word parse_word_text(const std::vector<Symbol>& alphabet, const std::string& text);

}  // namespace autalg

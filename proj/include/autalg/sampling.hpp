#pragma once

#include <random>

#include "autalg/regex.hpp"
#include "autalg/tree.hpp"
#include "autalg/word.hpp"

namespace autalg {

/// Nonzero edge weight drawn from the small desk-scale range of a spec.
Value random_edge_weight(const SemiringSpec& spec, std::mt19937_64& rng);

KMatrix random_kmatrix(SpecPtr spec, size_t rows, size_t cols, double density,
                       std::mt19937_64& rng);

KMatrix random_base_map(SpecPtr spec, size_t rows, size_t cols, std::mt19937_64& rng);

/// Base map with pairwise distinct targets; requires rows <= cols.
KMatrix random_injective_base_map(SpecPtr spec, size_t rows, size_t cols, std::mt19937_64& rng);

enum class EpsMode {
  None,         ///< no internal moves
  Plain,        ///< internal moves weighted like letter edges
  Contractive,  ///< real-valued internal moves with every row summing below one
};

struct AutomatonShape {
  size_t min_states = 1;
  size_t max_states = 4;
  size_t min_alphabet = 1;
  size_t max_alphabet = 3;
  double density = 0.3;
  EpsMode eps = EpsMode::None;
  double eps_density = 0.25;
  size_t exit_arity = 1;
};

WordAutomaton random_word_automaton(SpecPtr spec, const AutomatonShape& shape,
                                    std::mt19937_64& rng);

TreeAutomaton random_tree_automaton(SpecPtr spec, const AutomatonShape& shape,
                                    std::mt19937_64& rng);

RegExpr random_regex(SpecPtr spec, std::vector<Symbol> alphabet, size_t max_depth,
                     std::mt19937_64& rng);

}  // namespace autalg

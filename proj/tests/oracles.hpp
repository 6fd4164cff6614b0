// Test-only oracles, kept independent of the library's evaluation paths:
// Floyd-Warshall style closures instead of fixpoint iteration, and explicit
// split-sums instead of automaton constructions.
#pragma once

#include <limits>
#include <vector>

#include "autalg/kmatrix.hpp"
#include "autalg/word.hpp"

namespace autalg::testing {

/// Reflexive-transitive closure of a boolean adjacency matrix.
inline std::vector<std::vector<bool>> closure_oracle(const std::vector<std::vector<bool>>& adj) {
  const size_t n = adj.size();
  std::vector<std::vector<bool>> reach = adj;
  for (size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  return reach;
}

inline std::vector<std::vector<bool>> to_bool_matrix(const KMatrix& m) {
  std::vector<std::vector<bool>> out(m.rows(), std::vector<bool>(m.cols(), false));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j) != 0;
  return out;
}

/// All-pairs shortest paths with the empty path on the diagonal.
inline std::vector<std::vector<double>> shortest_paths_oracle(
    const std::vector<std::vector<double>>& edge_weights) {
  const size_t n = edge_weights.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dist = edge_weights;
  for (size_t i = 0; i < n; ++i) dist[i][i] = std::min(dist[i][i], 0.0);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        double via = dist[i][k] == inf || dist[k][j] == inf ? inf : dist[i][k] + dist[k][j];
        dist[i][j] = std::min(dist[i][j], via);
      }
  return dist;
}

/// Edge-reversed copy (transposed letter and internal-move matrices).
inline WordAutomaton reverse_automaton(const WordAutomaton& a) {
  std::vector<KMatrix> letters;
  for (size_t i = 0; i < a.alphabet().size(); ++i) letters.push_back(transpose(a.letter_at(i)));
  return WordAutomaton(a.spec(), a.size(), a.alphabet(), std::move(letters),
                       a.has_eps() ? std::optional<KMatrix>(transpose(a.eps())) : std::nullopt,
                       a.finals());
}

using ValueSlice = std::vector<std::pair<Word, Value>>;

inline Value slice_value(const ValueSlice& slice, const Word& w) {
  for (const auto& [word, value] : slice)
    if (word == w) return value;
  throw std::out_of_range("slice_value: word not in slice");
}

/// Split-sum concatenation of two language slices, evaluated directly.
inline ValueSlice concat_slices_oracle(const SemiringSpec& s, const ValueSlice& left,
                                       const ValueSlice& right,
                                       const std::vector<Symbol>& alphabet, size_t max_len) {
  ValueSlice out;
  for (const Word& w : words_up_to(alphabet, max_len)) {
    Value acc = s.zero();
    for (size_t cut = 0; cut <= w.size(); ++cut) {
      Word u(w.begin(), w.begin() + static_cast<long>(cut));
      Word v(w.begin() + static_cast<long>(cut), w.end());
      acc = s.plus(acc, s.times(slice_value(left, u), slice_value(right, v)));
    }
    out.emplace_back(w, acc);
  }
  return out;
}

inline ValueSlice first_exit(const std::vector<std::pair<Word, std::vector<Value>>>& slice) {
  ValueSlice out;
  for (const auto& [w, row] : slice) out.emplace_back(w, row.at(0));
  return out;
}

inline bool slices_eq(const SemiringSpec& s, const ValueSlice& a, const ValueSlice& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !s.eq(a[i].second, b[i].second)) return false;
  return true;
}

}  // namespace autalg::testing

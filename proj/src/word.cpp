#include "autalg/word.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace autalg {

std::string word_to_string(const Word& w) {
  if (w.empty()) return "@eps";
  bool single_char = true;
  for (const Symbol& s : w) single_char = single_char && s.size() == 1;
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i && !single_char) out += ' ';
    out += w[i];
  }
  return out;
}

std::vector<Word> words_up_to(const std::vector<Symbol>& alphabet, size_t max_len) {
  std::vector<Word> out{{}};
  size_t layer_begin = 0;
  for (size_t len = 1; len <= max_len; ++len) {
    size_t layer_end = out.size();
    for (size_t i = layer_begin; i < layer_end; ++i)
      for (const Symbol& a : alphabet) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    layer_begin = layer_end;
  }
  return out;
}

WordAutomaton::WordAutomaton(SpecPtr spec, size_t n, std::vector<Symbol> alphabet,
                             std::vector<KMatrix> letters, std::optional<KMatrix> eps,
                             KMatrix finals, std::vector<std::string> labels)
    : spec_(std::move(spec)),
      n_(n),
      alphabet_(std::move(alphabet)),
      letters_(std::move(letters)),
      eps_(std::move(eps)),
      finals_(std::move(finals)),
      labels_(std::move(labels)) {
  if (letters_.size() != alphabet_.size())
    throw DimensionMismatch("WordAutomaton: " + std::to_string(letters_.size()) +
                            " letter matrices for " + std::to_string(alphabet_.size()) +
                            " symbols");
  for (size_t i = 0; i < alphabet_.size(); ++i)
    for (size_t j = i + 1; j < alphabet_.size(); ++j)
      if (alphabet_[i] == alphabet_[j])
        throw ValidationError("WordAutomaton: duplicate symbol '" + alphabet_[i] + "'");
  auto check = [&](const KMatrix& m, const std::string& what, size_t cols) {
    if (!same_spec(*m.spec(), *spec_))
      throw SpecMismatch("WordAutomaton: " + what + " uses spec '" + m.spec()->name() + "'");
    if (m.rows() != n_ || m.cols() != cols)
      throw DimensionMismatch("WordAutomaton: " + what + " is " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()));
  };
  for (size_t i = 0; i < letters_.size(); ++i) check(letters_[i], "letter '" + alphabet_[i] + "'", n_);
  if (eps_) check(*eps_, "eps", n_);
  check(finals_, "finals", finals_.cols());
  if (labels_.empty())
    for (size_t i = 0; i < n_; ++i) labels_.push_back("q" + std::to_string(i));
  if (labels_.size() != n_)
    throw DimensionMismatch("WordAutomaton: " + std::to_string(labels_.size()) + " labels for " +
                            std::to_string(n_) + " states");
}

std::optional<size_t> WordAutomaton::symbol_index(const Symbol& a) const {
  for (size_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_[i] == a) return i;
  return std::nullopt;
}

const KMatrix& WordAutomaton::letter(const Symbol& a) const {
  auto i = symbol_index(a);
  if (!i) throw UnknownSymbol("symbol '" + a + "' not in alphabet");
  return letters_[*i];
}

bool WordAutomaton::operator==(const WordAutomaton& other) const {
  if (!same_spec(*spec_, *other.spec_) || n_ != other.n_ || alphabet_ != other.alphabet_ ||
      labels_ != other.labels_)
    return false;
  for (size_t i = 0; i < letters_.size(); ++i)
    if (!matrix_eq(letters_[i], other.letters_[i])) return false;
  // a missing internal-move matrix means no internal moves
  KMatrix mine = has_eps() ? *eps_ : zero_matrix(spec_, n_, n_);
  KMatrix theirs = other.has_eps() ? *other.eps_ : zero_matrix(other.spec_, n_, n_);
  if (!matrix_eq(mine, theirs)) return false;
  return finals_.cols() == other.finals_.cols() && matrix_eq(finals_, other.finals_);
}

KMatrix eps_star(const WordAutomaton& a, size_t max_iter) {
  if (!a.has_eps()) return identity(a.spec(), a.size());
  return star(a.eps(), max_iter);
}

KMatrix run_dual(const WordAutomaton& a, const Word& w, const KMatrix& eps_closure) {
  KMatrix result = eps_closure;
  for (const Symbol& s : w) result = compose(compose(result, a.letter(s)), eps_closure);
  return result;
}

KMatrix run_dual(const WordAutomaton& a, const Word& w) { return run_dual(a, w, eps_star(a)); }

std::vector<Value> weight(const WordAutomaton& a, size_t state, const Word& w) {
  if (state >= a.size())
    throw IndexOutOfRange("weight: state " + std::to_string(state) + " of " +
                          std::to_string(a.size()));
  return compose(run_dual(a, w), a.finals()).row(state);
}

namespace {

/// Sum over runs without internal moves: every state sequence j_0 .. j_k is
/// walked explicitly, products accumulated along the way.
struct PathEnumeration {
  const WordAutomaton& a;
  const Word& w;
  const SemiringSpec& s;
  std::vector<Value> total;

  void walk(size_t pos, size_t state, Value prefix) {
    if (pos == w.size()) {
      for (size_t e = 0; e < total.size(); ++e)
        total[e] = s.plus(total[e], s.times(prefix, a.finals().at(state, e)));
      return;
    }
    const KMatrix& m = a.letter(w[pos]);
    for (size_t k = 0; k < a.size(); ++k) {
      Value step = m.at(state, k);
      if (s.eq(step, s.zero())) continue;
      walk(pos + 1, k, s.times(prefix, step));
    }
  }
};

/// Path sums with up to eps_bound internal steps between consecutive letters,
/// tabulated over (position, state, internal steps used in the current gap).
struct InterleavedPathSum {
  const WordAutomaton& a;
  const Word& w;
  size_t eps_bound;
  const SemiringSpec& s;
  size_t arity = a.exit_arity();
  std::vector<char> done;
  std::vector<Value> memo;

  size_t cell(size_t pos, size_t state, size_t eps_used) const {
    return (pos * a.size() + state) * (eps_bound + 1) + eps_used;
  }

  const Value* run(size_t pos, size_t state, size_t eps_used) {
    const size_t c = cell(pos, state, eps_used);
    if (done[c]) return &memo[c * arity];
    std::vector<Value> acc(arity, s.zero());
    if (pos == w.size())
      for (size_t e = 0; e < arity; ++e) acc[e] = a.finals().at(state, e);
    if (eps_used < eps_bound) {
      for (size_t k = 0; k < a.size(); ++k) {
        Value step = a.eps().at(state, k);
        if (s.eq(step, s.zero())) continue;
        const Value* tail = run(pos, k, eps_used + 1);
        for (size_t e = 0; e < arity; ++e) acc[e] = s.plus(acc[e], s.times(step, tail[e]));
      }
    }
    if (pos < w.size()) {
      const KMatrix& m = a.letter(w[pos]);
      for (size_t k = 0; k < a.size(); ++k) {
        Value step = m.at(state, k);
        if (s.eq(step, s.zero())) continue;
        const Value* tail = run(pos + 1, k, 0);
        for (size_t e = 0; e < arity; ++e) acc[e] = s.plus(acc[e], s.times(step, tail[e]));
      }
    }
    done[c] = 1;
    std::copy(acc.begin(), acc.end(), memo.begin() + static_cast<long>(c * arity));
    return &memo[c * arity];
  }
};

}  // namespace

std::vector<Value> brute_force_weight(const WordAutomaton& a, size_t state, const Word& w,
                                      size_t eps_bound) {
  if (state >= a.size())
    throw IndexOutOfRange("brute_force_weight: state " + std::to_string(state) + " of " +
                          std::to_string(a.size()));
  for (const Symbol& s : w)
    if (!a.symbol_index(s)) throw UnknownSymbol("symbol '" + s + "' not in alphabet");
  if (!a.has_eps() || eps_bound == 0) {
    PathEnumeration paths{a, w, *a.spec(), std::vector<Value>(a.exit_arity(), a.spec()->zero())};
    paths.walk(0, state, a.spec()->one());
    return paths.total;
  }
  InterleavedPathSum sum{a, w, eps_bound, *a.spec(), a.exit_arity(), {}, {}};
  const size_t cells = (w.size() + 1) * a.size() * (eps_bound + 1);
  sum.done.assign(cells, 0);
  sum.memo.assign(cells * sum.arity, a.spec()->zero());
  const Value* row = sum.run(0, state, 0);
  return std::vector<Value>(row, row + sum.arity);
}

std::vector<std::pair<Word, std::vector<Value>>> saturation_slice(const WordAutomaton& a,
                                                                  size_t state, size_t max_len) {
  const KMatrix closure = eps_star(a);
  std::vector<std::pair<Word, std::vector<Value>>> out;
  for (const Word& w : words_up_to(a.alphabet(), max_len))
    out.emplace_back(w, run_dual(a, w, closure).row(state));
  return out;
}

LawReport check_em_laws(const WordAutomaton& a, const std::vector<Word>& words) {
  LawReport report;
  const KMatrix closure = eps_star(a);
  const KMatrix id = identity(a.spec(), a.size());

  report.checks.push_back(
      {"run_dual(empty) = eps_star", matrix_eq(run_dual(a, {}, closure), closure), ""});
  report.checks.push_back({"identity <= eps_star", leq(id, closure), ""});

  const bool absorbing = matrix_eq(compose(closure, closure), closure);
  if (a.spec()->idempotent_plus()) {
    report.checks.push_back({"eps_star absorbs itself", absorbing, ""});
  }

  LawCheck comp{"run_dual(uv) = run_dual(u) ; run_dual(v)", true, ""};
  if (!absorbing) {
    comp.detail = "skipped: eps_star does not absorb itself over '" + a.spec()->name() + "'";
  } else {
    std::map<Word, KMatrix> cache;
    auto dual = [&](const Word& w) -> const KMatrix& {
      auto it = cache.find(w);
      if (it == cache.end()) it = cache.emplace(w, run_dual(a, w, closure)).first;
      return it->second;
    };
    for (const Word& u : words) {
      for (const Word& v : words) {
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        if (!matrix_eq(compose(dual(u), dual(v)), dual(uv))) {
          comp.passed = false;
          comp.detail = "u=" + word_to_string(u) + ", v=" + word_to_string(v);
          break;
        }
      }
      if (!comp.passed) break;
    }
  }
  report.checks.push_back(comp);
  return report;
}

namespace {

void validate_entries(const RegularWordMap& r, const char* op) {
  for (size_t entry : r.entries)
    if (entry >= r.automaton.size())
      throw IndexOutOfRange(std::string(op) + ": entry state " + std::to_string(entry) +
                            " of " + std::to_string(r.automaton.size()));
}

}  // namespace

RegularWordMap unit_regular(SpecPtr spec, std::vector<Symbol> alphabet, size_t q) {
  std::vector<KMatrix> letters(alphabet.size(), zero_matrix(spec, q, q));
  WordAutomaton automaton(spec, q, std::move(alphabet), std::move(letters), std::nullopt,
                          identity(spec, q));
  std::vector<size_t> entries(q);
  for (size_t i = 0; i < q; ++i) entries[i] = i;
  return {std::move(entries), std::move(automaton)};
}

RegularWordMap compose_regular(const RegularWordMap& r1, const RegularWordMap& r2) {
  validate_entries(r1, "compose_regular");
  validate_entries(r2, "compose_regular");
  const WordAutomaton& a1 = r1.automaton;
  const WordAutomaton& a2 = r2.automaton;
  if (!same_spec(*a1.spec(), *a2.spec()))
    throw SpecMismatch("compose_regular: specs '" + a1.spec()->name() + "' and '" +
                       a2.spec()->name() + "' differ");
  if (a1.alphabet() != a2.alphabet()) throw AlphabetMismatch("compose_regular: alphabets differ");
  if (r1.exit_arity() != r2.entry_arity())
    throw ArityMismatch("compose_regular: exit arity " + std::to_string(r1.exit_arity()) +
                        " vs entry arity " + std::to_string(r2.entry_arity()));

  const SemiringSpec& s = *a1.spec();
  const size_t n1 = a1.size(), n2 = a2.size(), n = n1 + n2;

  std::vector<KMatrix> letters;
  for (size_t li = 0; li < a1.alphabet().size(); ++li) {
    KMatrix m(a1.spec(), n, n);
    for (size_t i = 0; i < n1; ++i)
      for (size_t j = 0; j < n1; ++j) m.set(i, j, a1.letter_at(li).at(i, j));
    for (size_t i = 0; i < n2; ++i)
      for (size_t j = 0; j < n2; ++j) m.set(n1 + i, n1 + j, a2.letter_at(li).at(i, j));
    letters.push_back(std::move(m));
  }

  KMatrix eps(a1.spec(), n, n);
  if (a1.has_eps())
    for (size_t i = 0; i < n1; ++i)
      for (size_t j = 0; j < n1; ++j) eps.set(i, j, a1.eps().at(i, j));
  if (a2.has_eps())
    for (size_t i = 0; i < n2; ++i)
      for (size_t j = 0; j < n2; ++j) eps.set(n1 + i, n1 + j, a2.eps().at(i, j));
  // hand-over moves: exit j of the left factor enters the right factor at its
  // j-th entry state, weighted by the left exit weight
  for (size_t x = 0; x < n1; ++x)
    for (size_t j = 0; j < r1.exit_arity(); ++j) {
      size_t target = n1 + r2.entries[j];
      eps.set(x, target, s.plus(eps.at(x, target), a1.finals().at(x, j)));
    }

  KMatrix finals(a1.spec(), n, r2.exit_arity());
  for (size_t i = 0; i < n2; ++i)
    for (size_t e = 0; e < r2.exit_arity(); ++e) finals.set(n1 + i, e, a2.finals().at(i, e));

  WordAutomaton automaton(a1.spec(), n, a1.alphabet(), std::move(letters), std::move(eps),
                          std::move(finals));
  return {r1.entries, std::move(automaton)};
}

RegularWordMap cotuple_regular(const std::vector<RegularWordMap>& rs) {
  if (rs.empty()) throw SpecMismatch("cotuple_regular: empty sequence");
  for (const RegularWordMap& r : rs) validate_entries(r, "cotuple_regular");
  const WordAutomaton& first = rs.front().automaton;
  size_t n = 0;
  for (const RegularWordMap& r : rs) {
    if (!same_spec(*r.automaton.spec(), *first.spec()))
      throw SpecMismatch("cotuple_regular: specs differ");
    if (r.automaton.alphabet() != first.alphabet())
      throw AlphabetMismatch("cotuple_regular: alphabets differ");
    if (r.exit_arity() != rs.front().exit_arity())
      throw ArityMismatch("cotuple_regular: exit arities differ");
    n += r.automaton.size();
  }

  bool any_eps = false;
  for (const RegularWordMap& r : rs) any_eps = any_eps || r.automaton.has_eps();

  std::vector<KMatrix> letters(first.alphabet().size(), zero_matrix(first.spec(), n, n));
  KMatrix eps(first.spec(), n, n);
  KMatrix finals(first.spec(), n, rs.front().exit_arity());
  std::vector<size_t> entries;

  size_t offset = 0;
  for (const RegularWordMap& r : rs) {
    const WordAutomaton& a = r.automaton;
    for (size_t li = 0; li < letters.size(); ++li)
      for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
          letters[li].set(offset + i, offset + j, a.letter_at(li).at(i, j));
    if (a.has_eps())
      for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) eps.set(offset + i, offset + j, a.eps().at(i, j));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t e = 0; e < finals.cols(); ++e) finals.set(offset + i, e, a.finals().at(i, e));
    for (size_t entry : r.entries) entries.push_back(offset + entry);
    offset += a.size();
  }

  WordAutomaton automaton(first.spec(), n, first.alphabet(), std::move(letters),
                          any_eps ? std::optional<KMatrix>(std::move(eps)) : std::nullopt,
                          std::move(finals));
  return {std::move(entries), std::move(automaton)};
}

RegularWordMap entries_first(const RegularWordMap& r) {
  validate_entries(r, "entries_first");
  const WordAutomaton& a = r.automaton;
  const size_t n = a.size();
  std::vector<size_t> to_new(n, n);
  size_t next = 0;
  for (size_t entry : r.entries)
    if (to_new[entry] == n) to_new[entry] = next++;
  for (size_t i = 0; i < n; ++i)
    if (to_new[i] == n) to_new[i] = next++;

  auto permute = [&](const KMatrix& m) {
    KMatrix out(a.spec(), n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) out.set(to_new[i], to_new[j], m.at(i, j));
    return out;
  };

  std::vector<KMatrix> letters;
  for (size_t li = 0; li < a.alphabet().size(); ++li) letters.push_back(permute(a.letter_at(li)));
  std::optional<KMatrix> eps;
  if (a.has_eps()) eps = permute(a.eps());
  KMatrix finals(a.spec(), n, a.exit_arity());
  for (size_t i = 0; i < n; ++i)
    for (size_t e = 0; e < a.exit_arity(); ++e) finals.set(to_new[i], e, a.finals().at(i, e));
  // positional default labels are regenerated rather than dragged along
  bool default_labels = true;
  for (size_t i = 0; i < n; ++i) default_labels = default_labels && a.label(i) == "q" + std::to_string(i);
  std::vector<std::string> labels(default_labels ? 0 : n);
  if (!default_labels)
    for (size_t i = 0; i < n; ++i) labels[to_new[i]] = a.label(i);

  std::vector<size_t> entries;
  for (size_t entry : r.entries) entries.push_back(to_new[entry]);
  return {std::move(entries), WordAutomaton(a.spec(), n, a.alphabet(), std::move(letters),
                                            std::move(eps), std::move(finals), std::move(labels))};
}

std::vector<Value> regular_weight(const RegularWordMap& r, size_t entry, const Word& w) {
  if (entry >= r.entries.size())
    throw IndexOutOfRange("regular_weight: entry " + std::to_string(entry) + " of " +
                          std::to_string(r.entries.size()));
  return weight(r.automaton, r.entries[entry], w);
}

std::vector<std::pair<Word, std::vector<Value>>> language_slice(const RegularWordMap& r,
                                                                size_t entry, size_t max_len) {
  if (entry >= r.entries.size())
    throw IndexOutOfRange("language_slice: entry " + std::to_string(entry) + " of " +
                          std::to_string(r.entries.size()));
  const KMatrix closure = eps_star(r.automaton);
  std::vector<std::pair<Word, std::vector<Value>>> out;
  for (const Word& w : words_up_to(r.automaton.alphabet(), max_len)) {
    KMatrix m = compose(run_dual(r.automaton, w, closure), r.automaton.finals());
    out.emplace_back(w, m.row(r.entries[entry]));
  }
  return out;
}

}  // namespace autalg

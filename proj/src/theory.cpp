#include "autalg/theory.hpp"

#include <map>
#include <sstream>

namespace autalg {

namespace {

constexpr size_t kMaxStatesForTables = 20;

void require_boolean(const SemiringSpec& spec, const char* op) {
  if (spec.name() != "boolean")
    throw NotBoolean(std::string(op) + ": requires the boolean spec, got '" + spec.name() + "'");
}

void require_tabulable(size_t n, const char* op) {
  if (n > kMaxStatesForTables)
    throw CapExceeded(std::string(op) + ": subset tables need n <= " +
                      std::to_string(kMaxStatesForTables) + ", got " + std::to_string(n));
}

}  // namespace

std::string subset_to_string(uint32_t mask, size_t n) {
  std::string out = "{";
  bool first = true;
  for (size_t q = 0; q < n; ++q) {
    if (!(mask & (1u << q))) continue;
    if (!first) out += ',';
    out += "q" + std::to_string(q);
    first = false;
  }
  return out + "}";
}

StateSetFunction::StateSetFunction(size_t n, std::vector<uint32_t> table)
    : n_(n), table_(std::move(table)) {
  require_tabulable(n, "StateSetFunction");
  if (table_.size() != (size_t{1} << n_))
    throw DimensionMismatch("StateSetFunction: table of " + std::to_string(table_.size()) +
                            " entries for n = " + std::to_string(n_));
}

StateSetFunction StateSetFunction::identity(size_t n) {
  require_tabulable(n, "StateSetFunction");
  std::vector<uint32_t> table(size_t{1} << n);
  for (size_t mask = 0; mask < table.size(); ++mask) table[mask] = static_cast<uint32_t>(mask);
  return StateSetFunction(n, std::move(table));
}

StateSetFunction StateSetFunction::constant(size_t n, uint32_t image) {
  require_tabulable(n, "StateSetFunction");
  return StateSetFunction(n, std::vector<uint32_t>(size_t{1} << n, image));
}

bool StateSetFunction::monotone() const {
  // checking one-bit extensions suffices for monotonicity over the powerset
  for (size_t mask = 0; mask < table_.size(); ++mask)
    for (size_t q = 0; q < n_; ++q) {
      size_t larger = mask | (size_t{1} << q);
      if (larger == mask) continue;
      if ((table_[mask] & table_[larger]) != table_[mask]) return false;
    }
  return true;
}

StateSetFunction compose_functions(const StateSetFunction& f, const StateSetFunction& g) {
  if (f.state_count() != g.state_count())
    throw DimensionMismatch("compose_functions: " + std::to_string(f.state_count()) + " vs " +
                            std::to_string(g.state_count()) + " states");
  std::vector<uint32_t> table(size_t{1} << f.state_count());
  for (size_t mask = 0; mask < table.size(); ++mask) table[mask] = f.apply(g.apply(mask));
  return StateSetFunction(f.state_count(), std::move(table));
}

std::optional<size_t> FiniteTheory::index_of(const StateSetFunction& f) const {
  for (size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == f) return i;
  return std::nullopt;
}

std::optional<size_t> FiniteTheory::index_of_name(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

StateSetFunction word_letter_action(const WordAutomaton& a, const Symbol& sym) {
  require_boolean(*a.spec(), "word_letter_action");
  require_tabulable(a.size(), "word_letter_action");
  const KMatrix closure = eps_star(a);
  const KMatrix step = compose(compose(closure, a.letter(sym)), closure);
  // pre[q'] = states reaching q' in one absorbed letter step
  std::vector<uint32_t> pre(a.size(), 0);
  for (size_t q = 0; q < a.size(); ++q)
    for (size_t t = 0; t < a.size(); ++t)
      if (step.at(q, t) != 0) pre[t] |= 1u << q;
  std::vector<uint32_t> table(size_t{1} << a.size(), 0);
  for (size_t mask = 0; mask < table.size(); ++mask)
    for (size_t t = 0; t < a.size(); ++t)
      if (mask & (1u << t)) table[mask] |= pre[t];
  return StateSetFunction(a.size(), std::move(table));
}

StateSetFunction tree_combine(const TreeAutomaton& a, const Symbol& sym,
                              const StateSetFunction& g1, const StateSetFunction& g2) {
  require_boolean(*a.spec(), "tree_combine");
  require_tabulable(a.size(), "tree_combine");
  if (g1.state_count() != a.size() || g2.state_count() != a.size())
    throw DimensionMismatch("tree_combine: functions over " + std::to_string(g1.state_count()) +
                            "/" + std::to_string(g2.state_count()) + " states for an automaton on " +
                            std::to_string(a.size()));
  auto sym_index = a.symbol_index(sym);
  if (!sym_index) throw UnknownSymbol("symbol '" + sym + "' not in alphabet");
  std::vector<uint32_t> table(size_t{1} << a.size(), 0);
  for (size_t mask = 0; mask < table.size(); ++mask) {
    uint32_t left = g1.apply(static_cast<uint32_t>(mask));
    uint32_t right = g2.apply(static_cast<uint32_t>(mask));
    uint32_t image = 0;
    for (size_t q = 0; q < a.size(); ++q) {
      bool hit = false;
      for (size_t q1 = 0; q1 < a.size() && !hit; ++q1) {
        if (!(left & (1u << q1))) continue;
        for (size_t q2 = 0; q2 < a.size() && !hit; ++q2)
          hit = (right & (1u << q2)) && a.delta_at(*sym_index, q, q1, q2) != 0;
      }
      if (hit) image |= 1u << q;
    }
    table[mask] = image;
  }
  return StateSetFunction(a.size(), std::move(table));
}

namespace {

struct TheoryBuilder {
  FiniteTheory theory;
  size_t cap;

  /// Returns true when the element is new.
  bool add(StateSetFunction f, const std::string& generator_name) {
    if (theory.index_of(f)) return false;
    if (theory.elements.size() >= cap)
      throw CapExceeded("generate_theory: closure exceeds " + std::to_string(cap) + " elements");
    theory.names.push_back(generator_name.empty() ? "e" + std::to_string(theory.elements.size())
                                                  : generator_name);
    theory.elements.push_back(std::move(f));
    return true;
  }
};

}  // namespace

FiniteTheory generate_theory(const WordAutomaton& a, size_t cap) {
  require_boolean(*a.spec(), "generate_theory");
  require_tabulable(a.size(), "generate_theory");

  std::vector<StateSetFunction> actions;
  TheoryBuilder builder{{a.size(), {}, {}}, cap};
  builder.add(StateSetFunction::identity(a.size()), "id");
  for (const Symbol& sym : a.alphabet()) {
    StateSetFunction action = word_letter_action(a, sym);
    builder.add(action, sym + "_A");
    actions.push_back(std::move(action));
  }

  // closure under letter pre-composition: pre_{a w} = pre_a of pre_w
  for (size_t next = 0; next < builder.theory.elements.size(); ++next) {
    StateSetFunction current = builder.theory.elements[next];
    for (const StateSetFunction& action : actions)
      builder.add(compose_functions(action, current), "");
  }
  return std::move(builder.theory);
}

FiniteTheory generate_theory(const TreeAutomaton& a, size_t cap) {
  require_boolean(*a.spec(), "generate_theory");
  require_tabulable(a.size(), "generate_theory");

  TheoryBuilder builder{{a.size(), {}, {}}, cap};
  const StateSetFunction id = StateSetFunction::identity(a.size());
  builder.add(id, "id");
  for (const Symbol& sym : a.alphabet()) builder.add(tree_combine(a, sym, id, id), sym + "_A");

  // closure under the full binary combine over all ordered pairs
  for (size_t next = 0; next < builder.theory.elements.size(); ++next) {
    StateSetFunction current = builder.theory.elements[next];
    for (const Symbol& sym : a.alphabet())
      for (size_t other = 0; other <= next; ++other) {
        StateSetFunction partner = builder.theory.elements[other];
        builder.add(tree_combine(a, sym, current, partner), "");
        if (other != next) builder.add(tree_combine(a, sym, partner, current), "");
      }
  }
  return std::move(builder.theory);
}

StateSetFunction theory_morphism(const WordAutomaton& a, const Word& w) {
  require_boolean(*a.spec(), "theory_morphism");
  require_tabulable(a.size(), "theory_morphism");
  StateSetFunction result = StateSetFunction::identity(a.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    result = compose_functions(word_letter_action(a, *it), result);
  return result;
}

StateSetFunction theory_morphism(const TreeAutomaton& a, const Tree& t) {
  require_boolean(*a.spec(), "theory_morphism");
  require_tabulable(a.size(), "theory_morphism");
  if (t.is_leaf()) {
    if (t.var() != 0)
      throw VariableOutOfRange("theory_morphism: terms use the single variable x0, found x" +
                               std::to_string(t.var()));
    return StateSetFunction::identity(a.size());
  }
  return tree_combine(a, t.symbol(), theory_morphism(a, t.left()), theory_morphism(a, t.right()));
}

uint32_t final_state_mask(const KMatrix& finals) {
  uint32_t mask = 0;
  for (size_t q = 0; q < finals.rows(); ++q)
    if (!finals.spec()->eq(finals.at(q, 0), finals.spec()->zero())) mask |= 1u << q;
  return mask;
}

namespace {

template <typename Automaton, typename Term>
bool recognize_impl(const Automaton& a, size_t state, const Term& term) {
  if (state >= a.size())
    throw IndexOutOfRange("recognize_membership: state " + std::to_string(state) + " of " +
                          std::to_string(a.size()));
  if (a.exit_arity() != 1)
    throw ArityMismatch("recognize_membership: exit arity " + std::to_string(a.exit_arity()) +
                        ", expected 1");
  uint32_t image = theory_morphism(a, term).apply(final_state_mask(a.finals()));
  return (image & (1u << state)) != 0;
}

template <typename Automaton>
RecognizingSubset recognizing_impl(const Automaton& a, size_t state, size_t cap) {
  if (state >= a.size())
    throw IndexOutOfRange("recognizing_subset: state " + std::to_string(state) + " of " +
                          std::to_string(a.size()));
  if (a.exit_arity() != 1)
    throw ArityMismatch("recognizing_subset: exit arity " + std::to_string(a.exit_arity()) +
                        ", expected 1");
  RecognizingSubset out{generate_theory(a, cap), {}, {}};
  const uint32_t finals = final_state_mask(a.finals());
  for (size_t i = 0; i < out.theory.elements.size(); ++i) {
    uint32_t image = out.theory.elements[i].apply(finals);
    if (image & (1u << state)) out.membership.push_back(i);
    if (image == (1u << state)) out.equality.push_back(i);
  }
  return out;
}

}  // namespace

bool recognize_membership(const WordAutomaton& a, size_t state, const Word& w) {
  return recognize_impl(a, state, w);
}

bool recognize_membership(const TreeAutomaton& a, size_t state, const Tree& t) {
  return recognize_impl(a, state, t);
}

RecognizingSubset recognizing_subset(const WordAutomaton& a, size_t state, size_t cap) {
  return recognizing_impl(a, state, cap);
}

RecognizingSubset recognizing_subset(const TreeAutomaton& a, size_t state, size_t cap) {
  return recognizing_impl(a, state, cap);
}

std::string render_theory_tsv(const FiniteTheory& theory) {
  std::ostringstream out;
  out << "subset";
  for (const std::string& name : theory.names) out << '\t' << name;
  out << '\n';
  for (size_t mask = 0; mask < (size_t{1} << theory.n); ++mask) {
    out << subset_to_string(static_cast<uint32_t>(mask), theory.n);
    for (const StateSetFunction& f : theory.elements)
      out << '\t' << subset_to_string(f.apply(static_cast<uint32_t>(mask)), theory.n);
    out << '\n';
  }
  return out.str();
}

}  // namespace autalg

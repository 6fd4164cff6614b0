// Acceptance suite: replays the worked examples exactly and sweeps the
// property/oracle checks at desk scale. Each criterion prints one line;
// the exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "autalg/regex.hpp"
#include "autalg/sampling.hpp"
#include "autalg/theory.hpp"
#include "oracles.hpp"

using namespace autalg;
using namespace autalg::testing;

namespace {

struct Checker {
  bool ok = true;
  std::ostringstream detail;
  size_t checks = 0;

  void expect(bool condition, const std::string& what) {
    ++checks;
    if (condition || !ok) return;
    ok = false;
    detail << what;
  }
};

TreeAutomaton frontier_automaton() {
  auto b = boolean_spec();
  std::vector<TreeAutomaton::Rule> rules{{1, "a", 1, 1, 1}, {1, "b", 0, 0, 1}};
  return TreeAutomaton(b, 2, {"a", "b"}, rules, KMatrix(b, 2, 1, {1, 0}));
}

// ---------------------------------------------------------------- criterion 1
void table_reproduction(Checker& c) {
  TreeAutomaton a = frontier_automaton();
  FiniteTheory theory = generate_theory(a);

  auto id_i = theory.index_of_name("id");
  auto a_i = theory.index_of_name("a_A");
  auto b_i = theory.index_of_name("b_A");
  c.expect(id_i && a_i && b_i, "missing named generators");
  if (!c.ok) return;

  const StateSetFunction& id = theory.elements[*id_i];
  const StateSetFunction& a_fn = theory.elements[*a_i];
  const StateSetFunction& b_fn = theory.elements[*b_i];
  const StateSetFunction none = StateSetFunction::constant(2, 0);

  // tables over inputs {}, {q0}, {q1}, {q0,q1}; the worked example's states
  // 1, 2 are q0, q1 here
  c.expect(id == StateSetFunction::identity(2), "id table");
  c.expect(a_fn == StateSetFunction(2, {0, 0, 2, 2}), "a_A table");
  c.expect(b_fn == StateSetFunction(2, {0, 2, 0, 2}), "b_A table");
  c.expect(theory.index_of(none).has_value(), "all-empty element missing");

  c.expect(compose_functions(a_fn, a_fn) == a_fn, "a_A o a_A != a_A");
  c.expect(compose_functions(a_fn, b_fn) == b_fn, "a_A o b_A != b_A");
  c.expect(compose_functions(b_fn, a_fn) == none, "b_A o a_A != b_A^2");
  c.expect(compose_functions(b_fn, b_fn) == none, "b_A o b_A != b_A^2");

  c.detail << "closure cardinality " << theory.elements.size() << " (recorded, not asserted); ";
}

// ---------------------------------------------------------------- criterion 2
void recognition_matches_semantics(Checker& c) {
  std::mt19937_64 rng(1002);
  AutomatonShape shape;  // n <= 4, |Sigma| <= 3, density 0.3, no internal moves
  for (int round = 0; round < 200 && c.ok; ++round) {
    WordAutomaton a = random_word_automaton(boolean_spec(), shape, rng);
    const uint32_t finals = final_state_mask(a.finals());

    std::vector<StateSetFunction> actions;
    for (const Symbol& sym : a.alphabet()) actions.push_back(word_letter_action(a, sym));

    // walk all words of length <= 6 by extending each word one letter;
    // morphisms and run matrices grow along the same prefix tree
    struct Item {
      Word word;
      StateSetFunction morphism;
      KMatrix run;
    };
    std::vector<Item> layer{{{}, StateSetFunction::identity(a.size()), identity(a.spec(), a.size())}};
    size_t word_index = 0;
    for (size_t len = 0; len <= 6 && c.ok; ++len) {
      std::vector<Item> next;
      for (const Item& item : layer) {
        KMatrix weights = compose(item.run, a.finals());
        uint32_t image = item.morphism.apply(finals);
        for (size_t i = 0; i < a.size(); ++i) {
          bool direct = weights.at(i, 0) != 0;
          bool recognized = (image >> i) & 1;
          c.expect(direct == recognized, "round " + std::to_string(round) + ", word " +
                                             word_to_string(item.word) + ", state " +
                                             std::to_string(i));
        }
        if (word_index++ % 13 == 0) {  // pin the public operation itself
          for (size_t i = 0; i < a.size(); ++i)
            c.expect(recognize_membership(a, i, item.word) == (weight(a, i, item.word)[0] != 0),
                     "direct recognize_membership, round " + std::to_string(round));
        }
        if (len < 6)
          for (size_t li = 0; li < a.alphabet().size(); ++li) {
            Word w = item.word;
            w.push_back(a.alphabet()[li]);
            next.push_back({std::move(w), compose_functions(item.morphism, actions[li]),
                            compose(item.run, a.letter_at(li))});
          }
      }
      layer = std::move(next);
    }
  }

  std::mt19937_64 tree_rng(1003);
  AutomatonShape tree_shape;
  tree_shape.max_states = 3;
  tree_shape.max_alphabet = 2;
  for (int round = 0; round < 100 && c.ok; ++round) {
    TreeAutomaton a = random_tree_automaton(boolean_spec(), tree_shape, tree_rng);
    const uint32_t finals = final_state_mask(a.finals());
    std::vector<Tree> trees = trees_up_to(a.alphabet(), 1, 3);
    for (size_t ti = 0; ti < trees.size() && c.ok; ++ti) {
      std::vector<Value> direct = eval_tree(a, trees[ti]);
      uint32_t image = theory_morphism(a, trees[ti]).apply(finals);
      for (size_t i = 0; i < a.size(); ++i)
        c.expect((direct[i] != 0) == (((image >> i) & 1) != 0),
                 "tree round " + std::to_string(round) + ", term " + trees[ti].to_string() +
                     ", state " + std::to_string(i));
      if (ti % 29 == 0)
        for (size_t i = 0; i < a.size(); ++i)
          c.expect(recognize_membership(a, i, trees[ti]) == (accepts(a, i, trees[ti]) != 0),
                   "direct tree recognize_membership, round " + std::to_string(round));
    }
  }
}

// ---------------------------------------------------------------- criterion 3
void weight_oracle_equivalence(Checker& c) {
  std::mt19937_64 rng(1004);
  for (const SpecPtr& spec : {boolean_spec(), natural_spec(), tropical_spec()}) {
    AutomatonShape shape;  // epsilon-free
    for (int round = 0; round < 40 && c.ok; ++round) {
      WordAutomaton a = random_word_automaton(spec, shape, rng);
      for (const Word& w : words_up_to(a.alphabet(), 6)) {
        for (size_t i = 0; i < a.size() && c.ok; ++i)
          c.expect(weight(a, i, w) == brute_force_weight(a, i, w, 0),
                   spec->name() + " round " + std::to_string(round) + ", word " +
                       word_to_string(w));
        if (!c.ok) break;
      }
    }
  }

  auto r = real_spec();
  std::mt19937_64 real_rng(1005);
  AutomatonShape shape;
  shape.eps = EpsMode::Contractive;
  for (int round = 0; round < 40 && c.ok; ++round) {
    WordAutomaton a = random_word_automaton(r, shape, real_rng);
    for (const Word& w : words_up_to(a.alphabet(), 5)) {
      for (size_t i = 0; i < a.size(); ++i) {
        std::vector<Value> direct = weight(a, i, w);
        std::vector<Value> oracle = brute_force_weight(a, i, w, 300);
        for (size_t e = 0; e < direct.size(); ++e)
          c.expect(std::abs(direct[e] - oracle[e]) <= 1e-9,
                   "real round " + std::to_string(round) + ", word " + word_to_string(w));
      }
      if (!c.ok) break;
    }
  }
}

// ---------------------------------------------------------------- criterion 4
void duality_laws(Checker& c) {
  for (const SpecPtr& spec : {boolean_spec(), chain_spec(3)}) {
    std::mt19937_64 rng(1006);
    for (int round = 0; round < 200 && c.ok; ++round) {
      size_t p = 1 + rng() % 6, q = 1 + rng() % 6;
      KMatrix f = random_base_map(spec, p, q, rng);
      KMatrix dual = transpose(f);
      const std::string tag = spec->name() + " round " + std::to_string(round);

      c.expect(leq(compose(dual, f), identity(spec, q)), tag + ": f o f_ above id");
      c.expect(leq(identity(spec, p), compose(f, dual)), tag + ": f_ o f below id");
      c.expect(matrix_eq(transpose(dual), f), tag + ": transpose not involutive");
      c.expect(check_adjunction(f).all_passed(), tag + ": adjunction report");

      KMatrix g = random_kmatrix(spec, p, q, 0.5, rng);
      KMatrix h = random_kmatrix(spec, q, p, 0.5, rng);
      c.expect(matrix_eq(transpose(compose(g, h)), compose(transpose(h), transpose(g))),
               tag + ": transpose does not reverse composition");
      KMatrix larger = entrywise_plus(g, random_kmatrix(spec, p, q, 0.4, rng));
      c.expect(leq(g, larger) && leq(transpose(g), transpose(larger)),
               tag + ": transpose does not preserve leq");
    }
  }
}

// ---------------------------------------------------------------- criterion 5
void saturation_laws(Checker& c) {
  auto b = boolean_spec();
  std::mt19937_64 rng(1007);
  for (int round = 0; round < 60 && c.ok; ++round) {
    size_t n = 1 + rng() % 6;
    KMatrix alpha = random_kmatrix(b, n, n, 0.3, rng);
    KMatrix closed = star(alpha);
    const std::string tag = "boolean round " + std::to_string(round);
    c.expect(leq(identity(b, n), closed), tag + ": id <= star");
    c.expect(leq(alpha, closed), tag + ": alpha <= star");
    c.expect(matrix_eq(compose(closed, closed), closed), tag + ": star not transitive");
    auto reach = closure_oracle(to_bool_matrix(alpha));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        c.expect((closed.at(i, j) != 0) == reach[i][j], tag + ": closure oracle disagrees");
  }

  for (int round = 0; round < 20 && c.ok; ++round) {
    KMatrix alpha = random_kmatrix(b, 3, 3, 0.3, rng);
    KMatrix closed = star(alpha);
    for (unsigned bits = 0; bits < 512 && c.ok; ++bits) {
      std::vector<Value> entries(9);
      for (size_t k = 0; k < 9; ++k) entries[k] = (bits >> k) & 1;
      KMatrix beta(b, 3, 3, std::move(entries));
      if (leq(identity(b, 3), beta) && leq(alpha, beta) && leq(compose(beta, beta), beta))
        c.expect(leq(closed, beta), "least-ness round " + std::to_string(round));
    }
  }

  auto t = tropical_spec();
  std::mt19937_64 trop_rng(1008);
  for (int round = 0; round < 60 && c.ok; ++round) {
    size_t n = 1 + trop_rng() % 6;
    KMatrix alpha(t, n, n);
    std::vector<std::vector<double>> weights(n, std::vector<double>(n, t->zero()));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (trop_rng() % 10 < 4) {
          double w = static_cast<double>(trop_rng() % 10);
          alpha.set(i, j, w);
          weights[i][j] = w;
        }
    KMatrix closed = star(alpha);
    auto oracle = shortest_paths_oracle(weights);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        c.expect(closed.at(i, j) == oracle[i][j],
                 "tropical round " + std::to_string(round) + " at (" + std::to_string(i) + "," +
                     std::to_string(j) + ")");
  }
}

// ---------------------------------------------------------------- criterion 6
void em_laws(Checker& c) {
  std::mt19937_64 rng(1009);
  for (const SpecPtr& spec : {boolean_spec(), natural_spec(), tropical_spec(), real_spec(),
                              unit_interval_spec(), chain_spec(3)}) {
    AutomatonShape shape;
    // internal moves only where the closure absorbs itself
    shape.eps = spec->idempotent_plus() ? EpsMode::Plain : EpsMode::None;
    for (int round = 0; round < 50 && c.ok; ++round) {
      WordAutomaton a = random_word_automaton(spec, shape, rng);
      LawReport report = check_em_laws(a, words_up_to(a.alphabet(), 3));
      for (const LawCheck& check : report.checks)
        c.expect(check.passed,
                 spec->name() + " round " + std::to_string(round) + ": " + check.law + " " +
                     check.detail);
    }
  }

  std::mt19937_64 tree_rng(1010);
  for (const SpecPtr& spec : {boolean_spec(), natural_spec(), tropical_spec(), real_spec()}) {
    AutomatonShape shape;
    shape.max_states = 3;
    shape.max_alphabet = 2;
    for (int round = 0; round < 10 && c.ok; ++round) {
      TreeAutomaton a = random_tree_automaton(spec, shape, tree_rng);
      std::vector<Tree> trees = trees_up_to(a.alphabet(), 1, 2);
      for (size_t oi = 0; oi < trees.size() && c.ok; oi += 3)
        for (size_t ii = 0; ii < trees.size(); ii += 5) {
          KMatrix leaf_values(spec, a.size(), 1);
          std::vector<Value> inner = eval_tree(a, trees[ii]);
          for (size_t q = 0; q < a.size(); ++q) leaf_values.set(q, 0, inner[q]);
          std::vector<Value> direct = eval_tree(a, trees[oi].substitute({trees[ii]}));
          std::vector<Value> layered = eval_tree_with(a, trees[oi], leaf_values);
          for (size_t q = 0; q < a.size(); ++q)
            c.expect(spec->eq(direct[q], layered[q]),
                     spec->name() + " substitution round " + std::to_string(round));
        }
    }
  }
}

// ---------------------------------------------------------------- criterion 7
void kleene_subtheory(Checker& c) {
  auto b = boolean_spec();
  const std::vector<Symbol> ab{"a", "b"};
  std::mt19937_64 rng(1011);
  for (int round = 0; round < 100 && c.ok; ++round) {
    RegExpr e = random_regex(b, ab, 4, rng);
    auto compiled = first_exit(language_slice(compile(e), 0, 5));
    auto denoted = denote_slice(e, 5);
    c.expect(slices_eq(*b, compiled, denoted), "round " + std::to_string(round) + ": " +
                                                   e.to_string());
  }

  std::mt19937_64 law_rng(1012);
  RegExpr unit = RegExpr::unit(b, ab);
  for (int round = 0; round < 20 && c.ok; ++round) {
    RegExpr e1 = random_regex(b, ab, 2, law_rng);
    RegExpr e2 = random_regex(b, ab, 2, law_rng);
    RegExpr e3 = random_regex(b, ab, 2, law_rng);
    const std::string tag = "laws round " + std::to_string(round);

    auto slice = [&](const RegExpr& e) { return first_exit(language_slice(compile(e), 0, 4)); };
    c.expect(slices_eq(*b, slice(RegExpr::comp(RegExpr::comp(e1, e2), e3)),
                       slice(RegExpr::comp(e1, RegExpr::comp(e2, e3)))),
             tag + ": composition not associative");
    c.expect(slices_eq(*b, slice(RegExpr::comp(unit, e1)), slice(e1)), tag + ": left unit");
    c.expect(slices_eq(*b, slice(RegExpr::comp(e1, unit)), slice(e1)), tag + ": right unit");
    RegExpr star = RegExpr::star_of(e1);
    c.expect(slices_eq(*b, slice(star),
                       slice(RegExpr::union_of(unit, RegExpr::comp(e1, star)))),
             tag + ": star unrolling");
  }
}

// ---------------------------------------------------------------- criterion 8
void fuzzy_instantiation(Checker& c) {
  std::mt19937_64 rng(1013);
  for (const SpecPtr& spec : {chain_spec(4), chain_spec(4, ChainTimes::TruncatedProduct),
                              unit_interval_spec()}) {
    AutomatonShape shape;
    shape.max_states = 3;
    for (int round = 0; round < 40 && c.ok; ++round) {
      WordAutomaton a = random_word_automaton(spec, shape, rng);
      for (const Word& w : words_up_to(a.alphabet(), 4)) {
        for (size_t i = 0; i < a.size(); ++i) {
          std::vector<Value> direct = weight(a, i, w);
          std::vector<Value> oracle = brute_force_weight(a, i, w, 0);
          for (size_t e = 0; e < direct.size(); ++e)
            c.expect(spec->approx() ? std::abs(direct[e] - oracle[e]) <= 1e-9
                                    : direct[e] == oracle[e],
                     spec->name() + " round " + std::to_string(round) + ", word " +
                         word_to_string(w));
        }
        if (!c.ok) break;
      }
    }
  }

  // the closure over a finite chain settles within 2^n * k rounds
  auto chain = chain_spec(4);
  std::mt19937_64 star_rng(1014);
  for (int round = 0; round < 100 && c.ok; ++round) {
    size_t n = 1 + star_rng() % 3;
    KMatrix alpha = random_kmatrix(chain, n, n, 0.5, star_rng);
    StarResult closed = star_with_iterations(alpha);
    size_t bound = (size_t{1} << n) * 4;
    c.expect(closed.iterations <= bound,
             "chain star took " + std::to_string(closed.iterations) + " > " +
                 std::to_string(bound) + " iterations");
    c.expect(leq(identity(chain, n), closed.matrix) && leq(alpha, closed.matrix),
             "chain star laws, round " + std::to_string(round));
  }
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(Checker&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 worked-table reproduction", 1.0, table_reproduction},
      {"2 recognition = run semantics", 60.0, recognition_matches_semantics},
      {"3 weight = path-sum oracle", 60.0, weight_oracle_equivalence},
      {"4 duality laws", 5.0, duality_laws},
      {"5 saturation laws", 10.0, saturation_laws},
      {"6 dual-action laws", 30.0, em_laws},
      {"7 Kleene subtheory laws", 30.0, kleene_subtheory},
      {"8 fuzzy instantiation", 10.0, fuzzy_instantiation},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Checker checker;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(checker);
    } catch (const std::exception& e) {
      checker.ok = false;
      checker.detail << "exception: " << e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = elapsed <= criterion.budget_seconds;
    bool passed = checker.ok && in_budget;
    failures += !passed;
    std::cout << (passed ? "[PASS] " : "[FAIL] ") << criterion.name << " (" << checker.checks
              << " checks, " << elapsed << "s";
    if (!in_budget) std::cout << ", over the " << criterion.budget_seconds << "s budget";
    std::cout << ")";
    std::string detail = checker.detail.str();
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
  }
  return failures;
}

#include <catch2/catch_amalgamated.hpp>

#include "autalg/autfile.hpp"
#include "autalg/sampling.hpp"

using namespace autalg;

namespace {

const char* kFrontierFile = R"(# worked tree example
kind tree
semiring boolean
alphabet a b
states 2
label 0 1
label 1 2
edge 1 a 1 1
edge 1 b 0 0
final 0
)";

Word make_word(const std::string& text) {
  Word w;
  for (char c : text) w.emplace_back(1, c);
  return w;
}

}  // namespace

TEST_CASE("the worked tree example parses") {
  LoadedAutomaton loaded = parse_automaton(kFrontierFile);
  REQUIRE_FALSE(loaded.is_word());
  const TreeAutomaton& a = loaded.tree();
  CHECK(a.size() == 2);
  CHECK(a.alphabet() == std::vector<Symbol>{"a", "b"});
  CHECK(a.delta(1, "a", 1, 1) == 1);
  CHECK(a.delta(1, "b", 0, 0) == 1);
  CHECK(a.delta(0, "a", 0, 0) == 0);
  CHECK(a.finals().at(0, 0) == 1);
  CHECK(a.finals().at(1, 0) == 0);
  CHECK(a.label(0) == "1");
  CHECK(a.label(1) == "2");
}

TEST_CASE("an empty edge section gives zero matrices") {
  LoadedAutomaton loaded = parse_automaton("kind word\nsemiring boolean\nalphabet a\nstates 2\n");
  const WordAutomaton& a = loaded.word();
  CHECK_FALSE(a.has_eps());
  CHECK(matrix_eq(a.letter("a"), zero_matrix(a.spec(), 2, 2)));
  CHECK(matrix_eq(a.finals(), zero_matrix(a.spec(), 2, 1)));
}

TEST_CASE("malformed files are rejected with line numbers") {
  CHECK_THROWS_AS(parse_automaton("kind word\nsemiring frobnicate\nstates 1\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("semiring boolean\nstates 1\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("kind word\nstates 1\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("kind word\nsemiring boolean\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("kind word\nsemiring boolean\nstates 1\nfrob 1\n"), ParseError);
  CHECK_THROWS_AS(
      parse_automaton("kind word\nsemiring boolean\nalphabet a\nstates 1\nedge 0 b 0\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_automaton("kind word\nsemiring boolean\nalphabet a\nstates 1\nedge 0 a 0 maybe\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_automaton("kind word\nsemiring boolean\nalphabet a\nstates 1\nedge 0 \"ab 0\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_automaton("kind word\nsemiring boolean\nalphabet a\nstates 1\nedge 0 a 3\n"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_automaton("kind word\nsemiring natural\nalphabet a\nstates 1\nedge 0 a 0 1.5\n"),
      ParseError);

  try {
    parse_automaton("kind word\nsemiring boolean\nalphabet a\nstates 1\nedge 0 b 0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 5);
  }
}

TEST_CASE("quoted word edges desugar into chains") {
  LoadedAutomaton loaded = parse_automaton(
      "kind word\nsemiring natural\nalphabet a b\nstates 2\nedge 0 \"ab\" 1 2\nfinal 1 0 3\n");
  const WordAutomaton& a = loaded.word();
  CHECK(a.size() == 3);  // one fresh chain state
  CHECK(weight(a, 0, make_word("ab"))[0] == 6);
  CHECK(weight(a, 0, make_word("a"))[0] == 0);

  // a quoted empty word is an internal move
  LoadedAutomaton eps = parse_automaton(
      "kind word\nsemiring boolean\nalphabet a\nstates 2\nedge 0 \"\" 1\nfinal 1\n");
  CHECK(eps.word().has_eps());
  CHECK(weight(eps.word(), 0, {})[0] == 1);
}

TEST_CASE("internal moves use the @eps label") {
  LoadedAutomaton loaded = parse_automaton(
      "kind word\nsemiring boolean\nalphabet a\nstates 2\nedge 0 @eps 1\nedge 1 a 1\nfinal 1\n");
  const WordAutomaton& a = loaded.word();
  REQUIRE(a.has_eps());
  CHECK(a.eps().at(0, 1) == 1);
  CHECK(weight(a, 0, {})[0] == 1);
  CHECK(weight(a, 0, make_word("a"))[0] == 1);
}

TEST_CASE("finals accept exit indices and weights") {
  LoadedAutomaton loaded = parse_automaton(
      "kind word\nsemiring natural\nalphabet a\nstates 2\nfinal 0 1 5\nfinal 1\n");
  const WordAutomaton& a = loaded.word();
  CHECK(a.exit_arity() == 2);
  CHECK(a.finals().at(0, 1) == 5);
  CHECK(a.finals().at(1, 0) == 1);
  CHECK(a.finals().at(0, 0) == 0);
}

TEST_CASE("entries and labels are kept in declaration order") {
  LoadedAutomaton loaded = parse_automaton(
      "kind word\nsemiring boolean\nalphabet a\nstates 2\nentry start 0\nentry alt 1\nlabel 1 "
      "sink\n");
  REQUIRE(loaded.entries.size() == 2);
  CHECK(loaded.entries[0] == std::pair<std::string, size_t>{"start", 0});
  CHECK(loaded.entries[1] == std::pair<std::string, size_t>{"alt", 1});
  CHECK(loaded.word().label(1) == "sink");

  RegularWordMap map = as_regular_map(loaded);
  CHECK(map.entries == std::vector<size_t>{0, 1});
}

TEST_CASE("rendered automata reparse identically") {
  SECTION("the worked example") {
    LoadedAutomaton loaded = parse_automaton(kFrontierFile);
    LoadedAutomaton reloaded = parse_automaton(render_automaton(loaded));
    CHECK(loaded == reloaded);
  }

  SECTION("random word automata across specs") {
    std::mt19937_64 rng(71);
    for (const SpecPtr& spec : {boolean_spec(), natural_spec(), tropical_spec(), real_spec(),
                                unit_interval_spec(), chain_spec(4)}) {
      INFO(spec->name());
      AutomatonShape shape;
      shape.eps = EpsMode::Plain;
      shape.exit_arity = 2;
      for (int round = 0; round < 10; ++round) {
        LoadedAutomaton loaded{random_word_automaton(spec, shape, rng), {{"start", 0}}};
        LoadedAutomaton reloaded = parse_automaton(render_automaton(loaded));
        CHECK(loaded == reloaded);
      }
    }
  }

  SECTION("random tree automata") {
    std::mt19937_64 rng(72);
    AutomatonShape shape;
    shape.max_states = 3;
    for (int round = 0; round < 10; ++round) {
      LoadedAutomaton loaded{random_tree_automaton(natural_spec(), shape, rng), {}};
      LoadedAutomaton reloaded = parse_automaton(render_automaton(loaded));
      CHECK(loaded == reloaded);
    }
  }
}

TEST_CASE("mangled inputs fail with reported errors, never crashes") {
  const std::string base = kFrontierFile;
  std::mt19937_64 rng(77);
  const std::string junk = "#{}\"@\t edge final x0 ()*.|chain:4 -1 999999999999 inf";
  for (int round = 0; round < 3000; ++round) {
    std::string text = base;
    for (int mutation = 0; mutation < 4; ++mutation) {
      size_t at = rng() % (text.size() + 1);
      switch (rng() % 3) {
        case 0:  // insert a junk character
          text.insert(at, 1, junk[rng() % junk.size()]);
          break;
        case 1:  // delete
          if (!text.empty()) text.erase(rng() % text.size(), 1);
          break;
        default:  // overwrite
          if (!text.empty()) text[rng() % text.size()] = junk[rng() % junk.size()];
      }
    }
    try {
      LoadedAutomaton loaded = parse_automaton(text);
      // surviving mutants must still render and reparse cleanly
      CHECK(parse_automaton(render_automaton(loaded)) == loaded);
    } catch (const Error&) {
      // the only acceptable failure mode
    }
  }

  std::mt19937_64 term_rng(78);
  const std::string term_junk = "(ax01 )b";
  for (int round = 0; round < 2000; ++round) {
    std::string text;
    size_t len = term_rng() % 12;
    for (size_t i = 0; i < len; ++i) text += term_junk[term_rng() % term_junk.size()];
    try {
      Tree::parse(text);
    } catch (const Error&) {
    }
  }
}

TEST_CASE("word text splits against the alphabet") {
  CHECK(parse_word_text({"a", "b"}, "ab") == make_word("ab"));
  CHECK(parse_word_text({"a", "b"}, "") == Word{});
  CHECK(parse_word_text({"a", "b"}, "@eps") == Word{});
  CHECK(parse_word_text({"a", "b"}, "a b a") == make_word("aba"));
  CHECK(parse_word_text({"ab", "a"}, "aba") == Word{"ab", "a"});  // greedy longest match
  CHECK_THROWS_AS(parse_word_text({"a"}, "ax"), UnknownSymbol);
  CHECK_THROWS_AS(parse_word_text({"a"}, "a x"), UnknownSymbol);
}

#include <catch2/catch_amalgamated.hpp>

#include "autalg/regex.hpp"
#include "autalg/sampling.hpp"
#include "oracles.hpp"

using namespace autalg;
using autalg::testing::first_exit;
using autalg::testing::slice_value;
using autalg::testing::slices_eq;

namespace {

const std::vector<Symbol> kAB{"a", "b"};

RegExpr parse_bool(const std::string& text) { return parse_regex(boolean_spec(), kAB, text); }

testing::ValueSlice compiled_slice(const RegExpr& e, size_t max_len) {
  RegularWordMap map = compile(e);
  return first_exit(language_slice(map, 0, max_len));
}

Word make_word(const std::string& text) {
  Word w;
  for (char c : text) w.emplace_back(1, c);
  return w;
}

}  // namespace

TEST_CASE("parsing validates symbols and structure") {
  CHECK(parse_bool("a.b").to_string() == "(a.b)");
  CHECK(parse_bool("a|b.a").to_string() == "(a|(b.a))");
  CHECK(parse_bool("(a|b).a").to_string() == "((a|b).a)");
  CHECK(parse_bool("a*").to_string() == "(a)*");
  CHECK(parse_bool("a**").to_string() == "((a)*)*");
  CHECK(parse_bool("0|1").to_string() == "(0|1)");
  CHECK_THROWS_AS(parse_bool("c"), UnknownSymbol);
  CHECK_THROWS_AS(parse_bool("a|"), ParseError);
  CHECK_THROWS_AS(parse_bool("(a"), ParseError);
  CHECK_THROWS_AS(parse_bool("a)"), ParseError);
  CHECK_THROWS_AS(parse_bool("a{"), ParseError);

  RegExpr weighted = parse_regex(natural_spec(), kAB, "a{2}.b{3}");
  CHECK(weighted.to_string() == "(a{2}.b{3})");
  CHECK_THROWS_AS(parse_regex(natural_spec(), kAB, "a{x}"), ParseError);
}

TEST_CASE("compiled expressions match their stated slices") {
  SECTION("a literal pair accepts its word") {
    auto slice = compiled_slice(parse_bool("a.b"), 3);
    for (const auto& [w, v] : slice) CHECK(v == (w == make_word("ab") ? 1 : 0));
  }

  SECTION("a starred atom accepts every power") {
    auto slice = compiled_slice(parse_bool("a*"), 2);
    CHECK(slice_value(slice, {}) == 1);
    CHECK(slice_value(slice, make_word("a")) == 1);
    CHECK(slice_value(slice, make_word("aa")) == 1);
    CHECK(slice_value(slice, make_word("b")) == 0);
  }

  SECTION("union merges the branches") {
    auto slice = compiled_slice(parse_bool("a|b*"), 1);
    CHECK(slice_value(slice, {}) == 1);
    CHECK(slice_value(slice, make_word("a")) == 1);
    CHECK(slice_value(slice, make_word("b")) == 1);
  }

  SECTION("weighted atoms carry their weight") {
    RegExpr e = parse_regex(natural_spec(), kAB, "a{2}");
    auto slice = compiled_slice(e, 1);
    CHECK(slice_value(slice, make_word("a")) == 2);
    CHECK(slice_value(slice, {}) == 0);
  }

  SECTION("a contractive starred atom sums geometrically") {
    RegExpr e = parse_regex(real_spec(), kAB, "a{0.5}*");
    auto slice = compiled_slice(e, 3);
    auto spec = real_spec();
    CHECK(spec->eq(slice_value(slice, {}), 1.0));
    CHECK(spec->eq(slice_value(slice, make_word("a")), 0.5));
    CHECK(spec->eq(slice_value(slice, make_word("aa")), 0.25));
  }
}

TEST_CASE("the denotation oracle on fixed expressions") {
  auto zero = denote_slice(parse_bool("0"), 3);
  for (const auto& [w, v] : zero) CHECK(v == 0);

  auto unit = denote_slice(parse_bool("1"), 3);
  for (const auto& [w, v] : unit) CHECK(v == (w.empty() ? 1 : 0));

  auto star = denote_slice(parse_bool("a*"), 2);
  CHECK(slice_value(star, {}) == 1);
  CHECK(slice_value(star, make_word("a")) == 1);
  CHECK(slice_value(star, make_word("aa")) == 1);
  CHECK(slice_value(star, make_word("ab")) == 0);
}

TEST_CASE("star and union refuse exact non-idempotent specs") {
  CHECK_THROWS_AS(parse_regex(natural_spec(), kAB, "a*"), NonIdempotentStar);
  CHECK_THROWS_AS(parse_regex(natural_spec(), kAB, "a|b"), NonIdempotentStar);
  CHECK_NOTHROW(parse_regex(natural_spec(), kAB, "a.b"));
  CHECK_NOTHROW(parse_regex(real_spec(), kAB, "a{0.5}*"));
  CHECK_NOTHROW(parse_regex(tropical_spec(), kAB, "a*|b"));
}

TEST_CASE("compilation agrees with the denotation oracle") {
  std::mt19937_64 rng(61);
  auto b = boolean_spec();
  for (int round = 0; round < 40; ++round) {
    RegExpr e = random_regex(b, kAB, 4, rng);
    INFO(e.to_string());
    auto compiled = compiled_slice(e, 5);
    auto denoted = denote_slice(e, 5);
    CHECK(slices_eq(*b, compiled, denoted));
  }
}

TEST_CASE("subtheory laws hold at the slice level") {
  std::mt19937_64 rng(62);
  auto b = boolean_spec();
  for (int round = 0; round < 15; ++round) {
    RegExpr e1 = random_regex(b, kAB, 2, rng);
    RegExpr e2 = random_regex(b, kAB, 2, rng);
    RegExpr e3 = random_regex(b, kAB, 2, rng);
    RegExpr unit = RegExpr::unit(b, kAB);

    auto assoc_left = denote_slice(RegExpr::comp(RegExpr::comp(e1, e2), e3), 4);
    auto assoc_right = denote_slice(RegExpr::comp(e1, RegExpr::comp(e2, e3)), 4);
    CHECK(slices_eq(*b, assoc_left, assoc_right));

    CHECK(slices_eq(*b, denote_slice(RegExpr::comp(unit, e1), 4), denote_slice(e1, 4)));
    CHECK(slices_eq(*b, denote_slice(RegExpr::comp(e1, unit), 4), denote_slice(e1, 4)));

    // star unrolls one step: e* = 1 | e.e*
    RegExpr star = RegExpr::star_of(e1);
    RegExpr unrolled = RegExpr::union_of(unit, RegExpr::comp(e1, star));
    CHECK(slices_eq(*b, denote_slice(star, 4), denote_slice(unrolled, 4)));

    // and the same laws through compilation
    CHECK(slices_eq(*b, compiled_slice(RegExpr::comp(RegExpr::comp(e1, e2), e3), 4),
                    compiled_slice(RegExpr::comp(e1, RegExpr::comp(e2, e3)), 4)));
    CHECK(slices_eq(*b, compiled_slice(star, 4), compiled_slice(unrolled, 4)));
  }
}

TEST_CASE("expression constructors validate their inputs") {
  auto b = boolean_spec();
  CHECK_THROWS_AS(RegExpr::atom(b, kAB, "z"), UnknownSymbol);
  CHECK_THROWS_AS(RegExpr::atom(natural_spec(), kAB, "a", 1.5), ValidationError);
  CHECK_THROWS_AS(RegExpr::union_of(RegExpr::unit(b, kAB), RegExpr::unit(b, {"a"})),
                  AlphabetMismatch);
  CHECK_THROWS_AS(RegExpr::comp(RegExpr::unit(b, kAB), RegExpr::unit(tropical_spec(), kAB)),
                  SpecMismatch);
}

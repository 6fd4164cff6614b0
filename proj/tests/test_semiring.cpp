#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "autalg/semiring.hpp"

using namespace autalg;

namespace {

std::function<std::optional<Value>()> chain_from(std::vector<Value> values, bool repeat_last) {
  auto state = std::make_shared<size_t>(0);
  auto data = std::make_shared<std::vector<Value>>(std::move(values));
  return [state, data, repeat_last]() -> std::optional<Value> {
    if (*state < data->size()) return (*data)[(*state)++];
    if (repeat_last && !data->empty()) return data->back();
    return std::nullopt;
  };
}

}  // namespace

TEST_CASE("built-in specs satisfy the semiring laws") {
  for (const auto& spec : {boolean_spec(), natural_spec(), tropical_spec(), real_spec(),
                           unit_interval_spec(), chain_spec(4), chain_spec(4, ChainTimes::TruncatedProduct),
                           chain_spec(1)}) {
    INFO(spec->name());
    LawReport report = check_algebra_laws(*spec, 1000, 7);
    for (const LawCheck& check : report.checks) {
      INFO(check.law << " " << check.detail);
      CHECK(check.passed);
    }
  }
}

TEST_CASE("quantale-flavoured specs also satisfy the sup laws") {
  for (const auto& spec :
       {boolean_spec(), tropical_spec(), unit_interval_spec(), chain_spec(3)}) {
    INFO(spec->name());
    CHECK(check_quantale_laws(*spec, 1000, 11).all_passed());
    CHECK_NOTHROW(QuantaleSpec::from(spec));
  }
  CHECK_THROWS_AS(QuantaleSpec::from(natural_spec()), Error);

  QuantaleSpec chain4 = QuantaleSpec::from(chain_spec(4));
  CHECK(chain4.join(0.25, 0.75) == 0.75);
  CHECK(chain4.bottom() == 0.0);
  QuantaleSpec trop = QuantaleSpec::from(tropical_spec());
  CHECK(trop.join(3, 5) == 3);  // join follows the spec order, not the numbers
}

TEST_CASE("zerosumfree fails for plain integer addition") {
  SemiringSpec::Config cfg;
  cfg.name = "integers";
  cfg.plus = [](Value a, Value b) { return a + b; };
  cfg.times = [](Value a, Value b) { return a * b; };
  cfg.zero = 0;
  cfg.one = 1;
  cfg.leq = [](Value a, Value b) { return a <= b; };
  cfg.sampler = [](std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-5, 5);
    return static_cast<Value>(d(rng));
  };
  SemiringSpec integers(std::move(cfg));

  LawReport report = check_algebra_laws(integers, 100, 7);
  const LawCheck* zsf = report.find("zerosumfree");
  REQUIRE(zsf != nullptr);
  CHECK_FALSE(zsf->passed);
  CHECK_FALSE(zsf->detail.empty());  // carries a concrete pair like (1, -1)
  CHECK_FALSE(report.find("zero-bottom")->passed);
}

TEST_CASE("law checking needs a carrier or a sampler") {
  SemiringSpec::Config cfg;
  cfg.name = "opaque";
  cfg.plus = [](Value a, Value b) { return a + b; };
  cfg.times = [](Value a, Value b) { return a * b; };
  cfg.leq = [](Value a, Value b) { return a <= b; };
  SemiringSpec opaque(std::move(cfg));
  CHECK_THROWS_AS(check_algebra_laws(opaque, 10, 1), SamplerMissing);
}

TEST_CASE("ascending_sup stabilization") {
  SECTION("boolean chain stabilizes at true") {
    auto spec = boolean_spec();
    CHECK(ascending_sup(*spec, chain_from({0, 1}, true)) == 1);
  }

  SECTION("geometric chain reaches its limit within tolerance") {
    auto spec = real_spec();
    auto k = std::make_shared<int>(0);
    auto chain = [k]() -> std::optional<Value> { return 1.0 - std::pow(2.0, -(*k)++); };
    Value v = ascending_sup(*spec, chain);
    CHECK(spec->eq(v, 1.0));
  }

  SECTION("constant chain returns immediately") {
    auto spec = chain_spec(4);
    CHECK(ascending_sup(*spec, chain_from({0.5}, true)) == 0.5);
  }

  SECTION("descending step raises") {
    auto spec = natural_spec();
    CHECK_THROWS_AS(ascending_sup(*spec, chain_from({0, 2, 1}, true)), NotAscending);
  }

  SECTION("unbounded strict growth exhausts the budget") {
    auto spec = natural_spec();
    auto k = std::make_shared<Value>(0);
    auto chain = [k]() -> std::optional<Value> { return (*k)++; };
    CHECK_THROWS_AS(ascending_sup(*spec, chain, 100), NoConvergence);
  }

  SECTION("an exhausted generator without stabilization raises") {
    auto spec = natural_spec();
    CHECK_THROWS_AS(ascending_sup(*spec, chain_from({0, 1, 2}, false)), NoConvergence);
  }

  SECTION("the result bounds every consumed element") {
    auto spec = tropical_spec();
    std::vector<Value> consumed;
    auto values = std::make_shared<std::vector<Value>>(std::vector<Value>{9, 5, 3, 3});
    auto pos = std::make_shared<size_t>(0);
    auto chain = [&consumed, values, pos]() -> std::optional<Value> {
      Value v = (*values)[std::min(*pos, values->size() - 1)];
      ++*pos;
      consumed.push_back(v);
      return v;
    };
    Value sup = ascending_sup(*spec, chain);
    CHECK(sup == 3);
    for (Value v : consumed) CHECK(spec->leq(v, sup));
  }
}

TEST_CASE("value formatting and parsing") {
  CHECK(boolean_spec()->format(1) == "true");
  CHECK(boolean_spec()->format(0) == "false");
  CHECK(boolean_spec()->parse("true") == Value{1});
  CHECK(natural_spec()->format(12) == "12");
  CHECK(natural_spec()->parse("inf") == std::numeric_limits<Value>::infinity());
  CHECK_FALSE(natural_spec()->parse("1.5").has_value());
  CHECK_FALSE(natural_spec()->parse("x").has_value());
  CHECK(tropical_spec()->format(std::numeric_limits<Value>::infinity()) == "inf");
  CHECK(real_spec()->format(0.5) == "0.5");
  CHECK(real_spec()->parse("0.5") == Value{0.5});
  CHECK(chain_spec(4)->parse("1/2") == Value{0.5});
  CHECK(chain_spec(4)->parse("2/4") == Value{0.5});
  CHECK(chain_spec(4)->parse("0.75") == Value{0.75});
  CHECK_FALSE(chain_spec(4)->parse("0.3").has_value());
  CHECK_FALSE(unit_interval_spec()->parse("1.5").has_value());
}

TEST_CASE("spec lookup by CLI name") {
  CHECK(spec_by_name("boolean")->name() == "boolean");
  CHECK(spec_by_name("natural")->name() == "natural");
  CHECK(spec_by_name("tropical")->name() == "tropical");
  CHECK(spec_by_name("real")->name() == "real");
  CHECK(spec_by_name("unit-interval")->name() == "unit-interval");
  CHECK(spec_by_name("chain:4")->name() == "chain:4");
  CHECK(spec_by_name("chain:0") == nullptr);
  CHECK(spec_by_name("chain:x") == nullptr);
  CHECK(spec_by_name("rig") == nullptr);
}

TEST_CASE("tropical order runs opposite to the numeric one") {
  auto spec = tropical_spec();
  const Value inf = std::numeric_limits<Value>::infinity();
  CHECK(spec->leq(inf, 3));  // the tropical zero is the bottom
  CHECK(spec->leq(5, 2));
  CHECK_FALSE(spec->leq(2, 5));
  CHECK(spec->zero() == inf);
  CHECK(spec->one() == 0);
}

TEST_CASE("truncated chain product stays on the chain") {
  auto spec = chain_spec(4, ChainTimes::TruncatedProduct);
  CHECK(spec->times(0.75, 0.5) == 0.25);
  CHECK(spec->times(0.25, 0.5) == 0.0);
  CHECK(spec->times(1.0, 0.75) == 0.75);
  for (Value x : spec->carrier())
    for (Value y : spec->carrier()) CHECK(spec->in_carrier(spec->times(x, y)));
}

#include "autalg/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace autalg {

namespace {

constexpr Value kInf = std::numeric_limits<Value>::infinity();

bool is_integral(Value v) { return std::isfinite(v) && v == std::floor(v); }

/// Shortest decimal form that parses back to the same double.
std::string format_double(Value v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (is_integral(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

std::optional<Value> parse_double(const std::string& text) {
  std::string t = text;
  if (t == "inf" || t == "+inf" || t == "infinity") return kInf;
  const char* begin = t.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') return std::nullopt;
  return v;
}

// Products over carriers containing +inf need the annihilation convention
// 0 * inf = 0, which IEEE arithmetic turns into NaN.
Value safe_product(Value a, Value b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

SemiringSpec::Sampler mixed_sampler(std::vector<Value> pool, bool with_uniform, Value lo, Value hi) {
  return [pool = std::move(pool), with_uniform, lo, hi](std::mt19937_64& rng) -> Value {
    std::uniform_int_distribution<size_t> pick(0, pool.size() + (with_uniform ? 1 : 0) - 1);
    size_t i = pick(rng);
    if (i < pool.size()) return pool[i];
    std::uniform_real_distribution<double> real(lo, hi);
    return real(rng);
  };
}

}  // namespace

std::string SemiringSpec::format(Value v) const {
  if (cfg_.format) return cfg_.format(v);
  return format_double(v);
}

std::optional<Value> SemiringSpec::parse(const std::string& text) const {
  if (cfg_.parse) return cfg_.parse(text);
  auto v = parse_double(text);
  if (v && !in_carrier(*v)) return std::nullopt;
  return v;
}

bool same_spec(const SemiringSpec& a, const SemiringSpec& b) { return a.name() == b.name(); }

SpecPtr boolean_spec() {
  static SpecPtr spec = [] {
    SemiringSpec::Config cfg;
    cfg.name = "boolean";
    cfg.plus = [](Value a, Value b) { return std::max(a, b); };
    cfg.times = [](Value a, Value b) { return std::min(a, b); };
    cfg.zero = 0;
    cfg.one = 1;
    cfg.leq = [](Value a, Value b) { return a <= b; };
    cfg.idempotent_plus = true;
    cfg.carrier = {0, 1};
    cfg.member = [](Value v) { return v == 0 || v == 1; };
    cfg.format = [](Value v) { return v != 0 ? std::string("true") : std::string("false"); };
    cfg.parse = [](const std::string& t) -> std::optional<Value> {
      if (t == "true" || t == "1") return 1;
      if (t == "false" || t == "0") return 0;
      return std::nullopt;
    };
    return std::make_shared<SemiringSpec>(std::move(cfg));
  }();
  return spec;
}

SpecPtr natural_spec() {
  static SpecPtr spec = [] {
    SemiringSpec::Config cfg;
    cfg.name = "natural";
    cfg.plus = [](Value a, Value b) { return a + b; };
    cfg.times = safe_product;
    cfg.zero = 0;
    cfg.one = 1;
    cfg.leq = [](Value a, Value b) { return a <= b; };
    cfg.member = [](Value v) { return v == kInf || (v >= 0 && is_integral(v)); };
    cfg.sampler = mixed_sampler({0, 0, 1, 1, 2, 3, 5, 17, kInf}, false, 0, 0);
    return std::make_shared<SemiringSpec>(std::move(cfg));
  }();
  return spec;
}

SpecPtr tropical_spec() {
  static SpecPtr spec = [] {
    SemiringSpec::Config cfg;
    cfg.name = "tropical";
    cfg.plus = [](Value a, Value b) { return std::min(a, b); };
    cfg.times = [](Value a, Value b) { return a + b; };
    cfg.zero = kInf;
    cfg.one = 0;
    // natural order of min-plus: x <= y iff min(x, y) = y
    cfg.leq = [](Value a, Value b) { return b <= a; };
    cfg.idempotent_plus = true;
    cfg.member = [](Value v) { return v == kInf || (v >= 0 && is_integral(v)); };
    cfg.sampler = mixed_sampler({0, 0, 1, 2, 3, 4, 7, 9, kInf, kInf}, false, 0, 0);
    return std::make_shared<SemiringSpec>(std::move(cfg));
  }();
  return spec;
}

SpecPtr real_spec() {
  static SpecPtr spec = [] {
    SemiringSpec::Config cfg;
    cfg.name = "real";
    cfg.plus = [](Value a, Value b) { return a + b; };
    cfg.times = safe_product;
    cfg.zero = 0;
    cfg.one = 1;
    cfg.approx = true;
    cfg.tolerance = 1e-9;
    cfg.leq = [](Value a, Value b) { return a <= b + 1e-9; };
    cfg.member = [](Value v) { return v >= 0; };
    cfg.sampler = mixed_sampler({0, 1, 0.5, 2, kInf}, true, 0.0, 4.0);
    return std::make_shared<SemiringSpec>(std::move(cfg));
  }();
  return spec;
}

SpecPtr unit_interval_spec() {
  static SpecPtr spec = [] {
    SemiringSpec::Config cfg;
    cfg.name = "unit-interval";
    cfg.plus = [](Value a, Value b) { return std::max(a, b); };
    cfg.times = [](Value a, Value b) { return a * b; };
    cfg.zero = 0;
    cfg.one = 1;
    cfg.approx = true;
    cfg.tolerance = 1e-9;
    cfg.leq = [](Value a, Value b) { return a <= b + 1e-9; };
    cfg.idempotent_plus = true;
    cfg.member = [](Value v) { return v >= 0 && v <= 1; };
    cfg.sampler = mixed_sampler({0, 1, 0.5, 0.25}, true, 0.0, 1.0);
    return std::make_shared<SemiringSpec>(std::move(cfg));
  }();
  return spec;
}

SpecPtr chain_spec(unsigned k, ChainTimes mode) {
  if (k == 0) throw Error("chain_spec: k must be positive");
  SemiringSpec::Config cfg;
  cfg.name = "chain:" + std::to_string(k) + (mode == ChainTimes::Min ? "" : ":luk");
  const double kk = k;
  // Chain values are the canonical doubles i/k; operations recover the index
  // by rounding so results stay bit-identical to carrier members.
  auto index_of = [kk](Value v) { return static_cast<long>(std::llround(v * kk)); };
  cfg.plus = [](Value a, Value b) { return std::max(a, b); };
  if (mode == ChainTimes::Min) {
    cfg.times = [](Value a, Value b) { return std::min(a, b); };
  } else {
    cfg.times = [kk, index_of](Value a, Value b) {
      long i = index_of(a) + index_of(b) - static_cast<long>(kk);
      return i <= 0 ? 0.0 : static_cast<double>(i) / kk;
    };
  }
  cfg.zero = 0;
  cfg.one = 1;
  cfg.leq = [](Value a, Value b) { return a <= b; };
  cfg.idempotent_plus = true;
  for (unsigned i = 0; i <= k; ++i) cfg.carrier.push_back(static_cast<double>(i) / kk);
  cfg.member = [carrier = cfg.carrier](Value v) {
    return std::find(carrier.begin(), carrier.end(), v) != carrier.end();
  };
  cfg.parse = [kk, carrier = cfg.carrier](const std::string& t) -> std::optional<Value> {
    std::string s = t;
    auto slash = s.find('/');
    double v = 0;
    if (slash != std::string::npos) {
      auto num = parse_double(s.substr(0, slash));
      auto den = parse_double(s.substr(slash + 1));
      if (!num || !den || *den == 0) return std::nullopt;
      v = *num / *den;
    } else {
      auto d = parse_double(s);
      if (!d) return std::nullopt;
      v = *d;
    }
    // snap to the nearest chain point when the text is a faithful spelling
    double snapped = std::llround(v * kk) / kk;
    if (std::abs(snapped - v) > 1e-12) return std::nullopt;
    if (snapped < 0 || snapped > 1) return std::nullopt;
    return snapped;
  };
  return std::make_shared<SemiringSpec>(std::move(cfg));
}

SpecPtr spec_by_name(const std::string& token) {
  if (token == "boolean") return boolean_spec();
  if (token == "natural") return natural_spec();
  if (token == "tropical") return tropical_spec();
  if (token == "real") return real_spec();
  if (token == "unit-interval") return unit_interval_spec();
  if (token.rfind("chain:", 0) == 0) {
    const std::string rest = token.substr(6);
    unsigned k = 0;
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
    if (ec == std::errc{} && p == rest.data() + rest.size() && k > 0) return chain_spec(k);
  }
  return nullptr;
}

QuantaleSpec QuantaleSpec::from(SpecPtr spec) {
  if (!spec) throw Error("QuantaleSpec: null spec");
  if (!spec->idempotent_plus())
    throw Error("QuantaleSpec: plus of '" + spec->name() + "' is not a binary supremum");
  return QuantaleSpec(std::move(spec));
}

namespace {

struct LawContext {
  const SemiringSpec& spec;
  std::vector<Value> pool;  // carrier when finite, sampled values otherwise
  bool exhaustive = false;
  size_t samples = 0;
  std::mt19937_64 rng;

  Value draw() {
    if (exhaustive) {
      std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
      return pool[pick(rng)];
    }
    return spec.sample(rng);
  }

  std::string show(Value x, Value y) const {
    return "(x=" + spec.format(x) + ", y=" + spec.format(y) + ")";
  }
  std::string show(Value x, Value y, Value z) const {
    return "(x=" + spec.format(x) + ", y=" + spec.format(y) + ", z=" + spec.format(z) + ")";
  }

  /// Runs `body` over all pairs (exhaustive) or `samples` random pairs;
  /// `body` returns an empty string on success, a counterexample otherwise.
  LawCheck over_pairs(const std::string& law, const std::function<std::string(Value, Value)>& body) {
    LawCheck check{law, true, ""};
    auto run = [&](Value x, Value y) {
      std::string cex = body(x, y);
      if (!cex.empty() && check.passed) {
        check.passed = false;
        check.detail = cex;
      }
    };
    if (exhaustive) {
      for (Value x : pool)
        for (Value y : pool) run(x, y);
    } else {
      for (size_t i = 0; i < samples; ++i) run(draw(), draw());
    }
    return check;
  }

  LawCheck over_triples(const std::string& law,
                        const std::function<std::string(Value, Value, Value)>& body) {
    LawCheck check{law, true, ""};
    auto run = [&](Value x, Value y, Value z) {
      std::string cex = body(x, y, z);
      if (!cex.empty() && check.passed) {
        check.passed = false;
        check.detail = cex;
      }
    };
    if (exhaustive) {
      for (Value x : pool)
        for (Value y : pool)
          for (Value z : pool) run(x, y, z);
    } else {
      for (size_t i = 0; i < samples; ++i) run(draw(), draw(), draw());
    }
    return check;
  }
};

LawReport run_semiring_laws(LawContext& ctx, bool quantale) {
  const SemiringSpec& s = ctx.spec;
  LawReport report;
  auto eq = [&](Value a, Value b) { return s.eq(a, b); };

  report.checks.push_back(ctx.over_pairs("plus-commutative", [&](Value x, Value y) {
    return eq(s.plus(x, y), s.plus(y, x)) ? "" : ctx.show(x, y);
  }));
  report.checks.push_back(ctx.over_triples("plus-associative", [&](Value x, Value y, Value z) {
    return eq(s.plus(s.plus(x, y), z), s.plus(x, s.plus(y, z))) ? "" : ctx.show(x, y, z);
  }));
  report.checks.push_back(ctx.over_pairs("plus-zero-identity", [&](Value x, Value) {
    return eq(s.plus(x, s.zero()), x) && eq(s.plus(s.zero(), x), x) ? "" : ctx.show(x, s.zero());
  }));
  report.checks.push_back(ctx.over_triples("times-associative", [&](Value x, Value y, Value z) {
    return eq(s.times(s.times(x, y), z), s.times(x, s.times(y, z))) ? "" : ctx.show(x, y, z);
  }));
  report.checks.push_back(ctx.over_pairs("times-one-identity", [&](Value x, Value) {
    return eq(s.times(x, s.one()), x) && eq(s.times(s.one(), x), x) ? "" : ctx.show(x, s.one());
  }));
  report.checks.push_back(ctx.over_triples("distributes-left", [&](Value x, Value y, Value z) {
    return eq(s.times(x, s.plus(y, z)), s.plus(s.times(x, y), s.times(x, z))) ? ""
                                                                              : ctx.show(x, y, z);
  }));
  report.checks.push_back(ctx.over_triples("distributes-right", [&](Value x, Value y, Value z) {
    return eq(s.times(s.plus(x, y), z), s.plus(s.times(x, z), s.times(y, z))) ? ""
                                                                              : ctx.show(x, y, z);
  }));
  report.checks.push_back(ctx.over_pairs("zero-annihilates", [&](Value x, Value) {
    return eq(s.times(x, s.zero()), s.zero()) && eq(s.times(s.zero(), x), s.zero())
               ? ""
               : ctx.show(x, s.zero());
  }));
  report.checks.push_back(ctx.over_pairs("zerosumfree", [&](Value x, Value y) {
    if (!eq(s.plus(x, y), s.zero())) return std::string();
    return eq(x, s.zero()) && eq(y, s.zero()) ? "" : ctx.show(x, y);
  }));
  report.checks.push_back(ctx.over_pairs("leq-reflexive", [&](Value x, Value) {
    return s.leq(x, x) ? "" : "(x=" + s.format(x) + ")";
  }));
  report.checks.push_back(ctx.over_triples("leq-transitive", [&](Value x, Value y, Value z) {
    if (!s.leq(x, y) || !s.leq(y, z)) return std::string();
    return s.leq(x, z) ? "" : ctx.show(x, y, z);
  }));
  report.checks.push_back(ctx.over_pairs("leq-antisymmetric", [&](Value x, Value y) {
    if (!s.leq(x, y) || !s.leq(y, x)) return std::string();
    return eq(x, y) ? "" : ctx.show(x, y);
  }));
  report.checks.push_back(ctx.over_pairs("zero-bottom", [&](Value x, Value) {
    return s.leq(s.zero(), x) ? "" : "(x=" + s.format(x) + ")";
  }));
  report.checks.push_back(ctx.over_triples("plus-monotone", [&](Value x, Value y, Value z) {
    if (!s.leq(x, y)) return std::string();
    return s.leq(s.plus(x, z), s.plus(y, z)) && s.leq(s.plus(z, x), s.plus(z, y))
               ? ""
               : ctx.show(x, y, z);
  }));
  report.checks.push_back(ctx.over_triples("times-monotone", [&](Value x, Value y, Value z) {
    if (!s.leq(x, y)) return std::string();
    return s.leq(s.times(x, z), s.times(y, z)) && s.leq(s.times(z, x), s.times(z, y))
               ? ""
               : ctx.show(x, y, z);
  }));
  if (s.idempotent_plus() || quantale) {
    report.checks.push_back(ctx.over_pairs("plus-idempotent", [&](Value x, Value) {
      return eq(s.plus(x, x), x) ? "" : "(x=" + s.format(x) + ")";
    }));
  }
  if (quantale) {
    report.checks.push_back(
        ctx.over_triples("times-preserves-binary-sup", [&](Value x, Value y, Value z) {
          bool left = eq(s.times(x, s.plus(y, z)), s.plus(s.times(x, y), s.times(x, z)));
          bool right = eq(s.times(s.plus(y, z), x), s.plus(s.times(y, x), s.times(z, x)));
          return left && right ? "" : ctx.show(x, y, z);
        }));
  }
  return report;
}

LawContext make_context(const SemiringSpec& spec, size_t samples, uint64_t seed) {
  LawContext ctx{spec, {}, false, samples, std::mt19937_64(seed)};
  if (spec.finite_carrier()) {
    ctx.pool = spec.carrier();
    ctx.exhaustive = true;
  } else if (!spec.has_sampler()) {
    throw SamplerMissing("check_algebra_laws: '" + spec.name() +
                         "' has neither a finite carrier nor a sampler");
  }
  return ctx;
}

}  // namespace

LawReport check_algebra_laws(const SemiringSpec& spec, size_t samples, uint64_t seed) {
  LawContext ctx = make_context(spec, samples, seed);
  return run_semiring_laws(ctx, /*quantale=*/false);
}

LawReport check_quantale_laws(const SemiringSpec& spec, size_t samples, uint64_t seed) {
  LawContext ctx = make_context(spec, samples, seed);
  return run_semiring_laws(ctx, /*quantale=*/true);
}

Value ascending_sup(const SemiringSpec& spec,
                    const std::function<std::optional<Value>()>& chain,
                    size_t max_iter) {
  std::optional<Value> prev = chain();
  if (!prev) throw NoConvergence("ascending_sup: empty chain");
  for (size_t step = 1; step < max_iter; ++step) {
    std::optional<Value> next = chain();
    if (!next) throw NoConvergence("ascending_sup: chain exhausted before stabilizing");
    if (!spec.leq(*prev, *next))
      throw NotAscending("ascending_sup: step " + std::to_string(step) + " descends (" +
                         spec.format(*prev) + " > " + spec.format(*next) + ")");
    if (spec.eq(*prev, *next)) return *next;
    prev = next;
  }
  throw NoConvergence("ascending_sup: no stabilization within " + std::to_string(max_iter) +
                      " elements");
}

}  // namespace autalg

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "autalg/errors.hpp"

namespace autalg {

/// Carrier values of every built-in coefficient algebra. Booleans are 0/1,
/// saturating naturals and the tropical semiring use nonnegative integers
/// plus +infinity, real-valued carriers use the value directly.
using Value = double;

/// One verdict of a law-checking pass.
struct LawCheck {
  std::string law;
  bool passed = true;
  std::string detail;  ///< counterexample, or a scope note for inapplicable laws
};

struct LawReport {
  std::vector<LawCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  const LawCheck* find(const std::string& law) const {
    for (const auto& c : checks)
      if (c.law == law) return &c;
    return nullptr;
  }
};

class SemiringSpec;
using SpecPtr = std::shared_ptr<const SemiringSpec>;

/// A positively ordered semiring presented operationally: carrier membership,
/// the two monoid operations, the order, and enough metadata to drive law
/// checking, fixpoint iteration and parsing.
///
/// Invariants expected of any instance (and verified by check_algebra_laws):
///   - (carrier, plus, zero) is a commutative monoid, (carrier, times, one) a
///     monoid, times distributes over plus and zero annihilates;
///   - plus(x, y) = zero forces x = y = zero (zerosumfree);
///   - leq is a partial order with zero as bottom, and both operations are
///     monotone in each argument.
///
/// Real-valued carriers set `approx` and compare values within `tolerance`;
/// exact carriers compare structurally.
class SemiringSpec {
 public:
  using BinaryOp = std::function<Value(Value, Value)>;
  using OrderPred = std::function<bool(Value, Value)>;
  using Sampler = std::function<Value(std::mt19937_64&)>;
  using Formatter = std::function<std::string(Value)>;
  using ValueParser = std::function<std::optional<Value>(const std::string&)>;
  using Membership = std::function<bool(Value)>;

  struct Config {
    std::string name;
    BinaryOp plus;
    BinaryOp times;
    Value zero = 0;
    Value one = 1;
    OrderPred leq;
    bool idempotent_plus = false;
    bool approx = false;
    double tolerance = 0.0;
    std::vector<Value> carrier;  ///< nonempty iff the carrier is finite
    Sampler sampler;             ///< required when the carrier is infinite
    Formatter format;
    ValueParser parse;
    Membership member;
  };

  explicit SemiringSpec(Config cfg) : cfg_(std::move(cfg)) {}

  const std::string& name() const { return cfg_.name; }
  Value plus(Value a, Value b) const { return cfg_.plus(a, b); }
  Value times(Value a, Value b) const { return cfg_.times(a, b); }
  Value zero() const { return cfg_.zero; }
  Value one() const { return cfg_.one; }
  bool leq(Value a, Value b) const { return cfg_.leq(a, b); }
  bool idempotent_plus() const { return cfg_.idempotent_plus; }
  bool approx() const { return cfg_.approx; }
  double tolerance() const { return cfg_.tolerance; }
  bool finite_carrier() const { return !cfg_.carrier.empty(); }
  const std::vector<Value>& carrier() const { return cfg_.carrier; }
  bool has_sampler() const { return static_cast<bool>(cfg_.sampler); }
  Value sample(std::mt19937_64& rng) const { return cfg_.sampler(rng); }
  bool in_carrier(Value v) const { return !cfg_.member || cfg_.member(v); }

  /// Equality on carrier values: exact, or within tolerance when approx.
  bool eq(Value a, Value b) const {
    if (!cfg_.approx) return a == b;
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::abs(a - b) <= cfg_.tolerance;
  }

  std::string format(Value v) const;
  std::optional<Value> parse(const std::string& text) const;

 private:
  Config cfg_;
};

/// Two specs are interchangeable iff they carry the same name.
bool same_spec(const SemiringSpec& a, const SemiringSpec& b);

// Built-in instances.
SpecPtr boolean_spec();        ///< {false, true}; or / and
SpecPtr natural_spec();        ///< naturals with a saturating top; + / *
SpecPtr tropical_spec();       ///< naturals + infinity; min / +; zero = inf, one = 0
SpecPtr real_spec();           ///< [0, +inf]; + / *; tolerance 1e-9
SpecPtr unit_interval_spec();  ///< [0, 1]; max / *; tolerance 1e-9

enum class ChainTimes {
  Min,               ///< multiplication is the lattice meet
  TruncatedProduct,  ///< multiplication is max(0, x + y - 1) on the chain
};

/// Finite chain 0 < 1/k < ... < 1 with max as join.
SpecPtr chain_spec(unsigned k, ChainTimes mode = ChainTimes::Min);

/// Resolves the names accepted in automaton files and CLI flags:
/// boolean | natural | tropical | real | unit-interval | chain:<k>.
/// Returns nullptr for unknown tokens.
SpecPtr spec_by_name(const std::string& token);

/// View of a spec whose plus is a binary supremum. Construction validates the
/// idempotency flag; chain suprema are taken with ascending_sup.
class QuantaleSpec {
 public:
  static QuantaleSpec from(SpecPtr spec);

  const SemiringSpec& spec() const { return *spec_; }
  const SpecPtr& ptr() const { return spec_; }
  Value join(Value a, Value b) const { return spec_->plus(a, b); }
  Value bottom() const { return spec_->zero(); }

 private:
  explicit QuantaleSpec(SpecPtr spec) : spec_(std::move(spec)) {}
  SpecPtr spec_;
};

/// Checks every law listed in the class invariant, exhaustively for finite
/// carriers and over `samples` seeded random tuples otherwise. Each failed
/// entry carries a concrete counterexample.
///
/// Throws SamplerMissing when the carrier is infinite and no sampler is set.
LawReport check_algebra_laws(const SemiringSpec& spec, size_t samples, uint64_t seed);

/// The semiring laws plus idempotency of plus and preservation of binary
/// suprema by times in each argument.
LawReport check_quantale_laws(const SemiringSpec& spec, size_t samples, uint64_t seed);

/// Consumes an ascending chain until two consecutive elements are equal
/// (within tolerance when approx) and returns the stabilized value.
///
/// Throws NotAscending when a step violates leq and NoConvergence when the
/// generator is exhausted or max_iter elements were consumed without
/// stabilizing.
Value ascending_sup(const SemiringSpec& spec,
                    const std::function<std::optional<Value>()>& chain,
                    size_t max_iter = 10000);

}  // namespace autalg

#include "autalg/sampling.hpp"

namespace autalg {

namespace {

size_t pick(std::mt19937_64& rng, size_t lo, size_t hi) {
  std::uniform_int_distribution<size_t> d(lo, hi);
  return d(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

std::vector<Symbol> letters(size_t count) {
  const char names[] = "abcdefgh";
  std::vector<Symbol> out;
  for (size_t i = 0; i < count && i < 8; ++i) out.emplace_back(1, names[i]);
  return out;
}

}  // namespace

Value random_edge_weight(const SemiringSpec& spec, std::mt19937_64& rng) {
  const std::string& name = spec.name();
  if (name == "boolean") return 1;
  if (name == "natural") return static_cast<double>(pick(rng, 1, 3));
  if (name == "tropical") return static_cast<double>(pick(rng, 0, 5));
  if (name == "real") return uniform(rng, 0.05, 1.0);
  if (name == "unit-interval") return uniform(rng, 0.05, 1.0);
  if (spec.finite_carrier()) {
    const auto& carrier = spec.carrier();
    return carrier[pick(rng, 1, carrier.size() - 1)];  // skip the bottom
  }
  return spec.one();
}

KMatrix random_kmatrix(SpecPtr spec, size_t rows, size_t cols, double density,
                       std::mt19937_64& rng) {
  KMatrix m(spec, rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      if (uniform(rng, 0, 1) < density) m.set(i, j, random_edge_weight(*spec, rng));
  return m;
}

KMatrix random_base_map(SpecPtr spec, size_t rows, size_t cols, std::mt19937_64& rng) {
  std::vector<size_t> image(rows);
  for (size_t i = 0; i < rows; ++i) image[i] = pick(rng, 0, cols - 1);
  return base_map(std::move(spec), image, cols);
}

KMatrix random_injective_base_map(SpecPtr spec, size_t rows, size_t cols, std::mt19937_64& rng) {
  if (rows > cols) throw DimensionMismatch("random_injective_base_map: rows exceed cols");
  std::vector<size_t> targets(cols);
  for (size_t j = 0; j < cols; ++j) targets[j] = j;
  std::shuffle(targets.begin(), targets.end(), rng);
  targets.resize(rows);
  return base_map(std::move(spec), targets, cols);
}

namespace {

std::optional<KMatrix> random_eps(SpecPtr spec, size_t n, const AutomatonShape& shape,
                                  std::mt19937_64& rng) {
  switch (shape.eps) {
    case EpsMode::None:
      return std::nullopt;
    case EpsMode::Plain:
      return random_kmatrix(spec, n, n, shape.eps_density, rng);
    case EpsMode::Contractive: {
      // every row sums strictly below one so the closure converges
      KMatrix eps(spec, n, n);
      const double cap = 0.9 / static_cast<double>(n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (uniform(rng, 0, 1) < shape.eps_density) eps.set(i, j, uniform(rng, cap / 4, cap));
      return eps;
    }
  }
  return std::nullopt;
}

}  // namespace

WordAutomaton random_word_automaton(SpecPtr spec, const AutomatonShape& shape,
                                    std::mt19937_64& rng) {
  const size_t n = pick(rng, shape.min_states, shape.max_states);
  std::vector<Symbol> alphabet = letters(pick(rng, shape.min_alphabet, shape.max_alphabet));
  std::vector<KMatrix> matrices;
  for (size_t i = 0; i < alphabet.size(); ++i)
    matrices.push_back(random_kmatrix(spec, n, n, shape.density, rng));
  KMatrix finals(spec, n, shape.exit_arity);
  for (size_t i = 0; i < n; ++i)
    for (size_t e = 0; e < shape.exit_arity; ++e)
      if (uniform(rng, 0, 1) < 0.5) finals.set(i, e, random_edge_weight(*spec, rng));
  return WordAutomaton(spec, n, std::move(alphabet), std::move(matrices),
                       random_eps(spec, n, shape, rng), std::move(finals));
}

TreeAutomaton random_tree_automaton(SpecPtr spec, const AutomatonShape& shape,
                                    std::mt19937_64& rng) {
  const size_t n = pick(rng, shape.min_states, shape.max_states);
  std::vector<Symbol> alphabet = letters(pick(rng, shape.min_alphabet, shape.max_alphabet));
  std::vector<TreeAutomaton::Rule> rules;
  for (const Symbol& sym : alphabet)
    for (size_t q = 0; q < n; ++q)
      for (size_t l = 0; l < n; ++l)
        for (size_t r = 0; r < n; ++r)
          if (uniform(rng, 0, 1) < shape.density)
            rules.push_back({q, sym, l, r, random_edge_weight(*spec, rng)});
  KMatrix finals(spec, n, shape.exit_arity);
  for (size_t i = 0; i < n; ++i)
    for (size_t e = 0; e < shape.exit_arity; ++e)
      if (uniform(rng, 0, 1) < 0.5) finals.set(i, e, random_edge_weight(*spec, rng));
  return TreeAutomaton(spec, n, std::move(alphabet), std::move(rules), std::move(finals));
}

RegExpr random_regex(SpecPtr spec, std::vector<Symbol> alphabet, size_t max_depth,
                     std::mt19937_64& rng) {
  auto leaf = [&]() -> RegExpr {
    switch (pick(rng, 0, 5)) {
      case 0:
        return RegExpr::unit(spec, alphabet);
      case 1:
        return RegExpr::zero(spec, alphabet);
      default:
        return RegExpr::atom(spec, alphabet, alphabet[pick(rng, 0, alphabet.size() - 1)]);
    }
  };
  if (max_depth == 0) return leaf();
  switch (pick(rng, 0, 4)) {
    case 0:
      return leaf();
    case 1:
      return RegExpr::union_of(random_regex(spec, alphabet, max_depth - 1, rng),
                               random_regex(spec, alphabet, max_depth - 1, rng));
    case 2:
      return RegExpr::comp(random_regex(spec, alphabet, max_depth - 1, rng),
                           random_regex(spec, alphabet, max_depth - 1, rng));
    default:
      return RegExpr::star_of(random_regex(spec, alphabet, max_depth - 1, rng));
  }
}

}  // namespace autalg

#include "autalg/autfile.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace autalg {

const SpecPtr& LoadedAutomaton::spec() const {
  return is_word() ? word().spec() : tree().spec();
}

size_t LoadedAutomaton::states() const { return is_word() ? word().size() : tree().size(); }

namespace {

struct RawLine {
  size_t number;
  std::vector<std::string> tokens;
};

std::vector<RawLine> tokenize(const std::string& text) {
  std::vector<RawLine> lines;
  std::istringstream in(text);
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::vector<std::string> tokens;
    size_t pos = 0;
    while (pos < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[pos]))) {
        ++pos;
        continue;
      }
      if (line[pos] == '#') break;
      if (line[pos] == '"') {
        size_t close = line.find('"', pos + 1);
        if (close == std::string::npos) throw ParseError(number, "unterminated quote");
        tokens.push_back(line.substr(pos, close - pos + 1));  // keep the quotes
        pos = close + 1;
        continue;
      }
      size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])) &&
             line[pos] != '#')
        ++pos;
      tokens.push_back(line.substr(start, pos - start));
    }
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
  }
  return lines;
}

size_t parse_index(const RawLine& line, const std::string& token, const char* what) {
  for (char c : token)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(line.number, std::string(what) + " '" + token + "' is not a number");
  if (token.empty() || token.size() > 9)
    throw ParseError(line.number, std::string(what) + " '" + token + "' is out of range");
  return std::stoul(token);
}

struct FileBuilder {
  std::optional<std::string> kind;
  SpecPtr spec;
  std::vector<Symbol> alphabet;
  std::optional<size_t> states;

  struct WordEdge {
    size_t line;
    size_t src;
    std::string label;  // symbol, @eps, or quoted word
    size_t dst;
    std::optional<Value> weight;
  };
  struct TreeEdge {
    size_t line;
    size_t src;
    Symbol sym;
    size_t left, right;
    std::optional<Value> weight;
  };
  struct Final {
    size_t line;
    size_t state;
    size_t exit = 0;
    std::optional<Value> weight;
  };

  std::vector<WordEdge> word_edges;
  std::vector<TreeEdge> tree_edges;
  std::vector<Final> finals;
  std::vector<std::pair<std::string, size_t>> entries;
  std::vector<std::pair<size_t, std::string>> labels;

  Value parse_weight(const RawLine& line, const std::string& token) const {
    auto w = spec->parse(token);
    if (!w)
      throw ParseError(line.number,
                       "weight '" + token + "' does not parse in semiring '" + spec->name() + "'");
    return *w;
  }

  void check_symbol(const RawLine& line, const Symbol& sym) const {
    for (const Symbol& a : alphabet)
      if (a == sym) return;
    throw ParseError(line.number, "symbol '" + sym + "' not in alphabet");
  }

  size_t check_state(const RawLine& line, size_t state) const {
    if (state >= *states)
      throw ValidationError("line " + std::to_string(line.number) + ": state " +
                            std::to_string(state) + " exceeds " + std::to_string(*states));
    return state;
  }
};

Word split_quoted_word(const FileBuilder& builder, const RawLine& line, const std::string& quoted) {
  // greedy longest-match tokenization against the alphabet
  std::string body = quoted.substr(1, quoted.size() - 2);
  Word word;
  size_t pos = 0;
  while (pos < body.size()) {
    size_t best = 0;
    for (const Symbol& sym : builder.alphabet)
      if (body.compare(pos, sym.size(), sym) == 0 && sym.size() > best) best = sym.size();
    if (best == 0)
      throw ParseError(line.number, "cannot split '" + body + "' into alphabet symbols at offset " +
                                        std::to_string(pos));
    word.push_back(body.substr(pos, best));
    pos += best;
  }
  return word;
}

LoadedAutomaton build(FileBuilder& builder) {
  const SpecPtr& spec = builder.spec;
  const size_t declared = *builder.states;

  size_t exit_arity = 1;
  for (const auto& f : builder.finals) exit_arity = std::max(exit_arity, f.exit + 1);

  std::vector<std::string> labels;
  for (size_t i = 0; i < declared; ++i) labels.push_back("q" + std::to_string(i));
  for (const auto& [state, text] : builder.labels) labels[state] = text;

  LoadedAutomaton out{WordAutomaton(spec, 0, {}, {}, std::nullopt, KMatrix(spec, 0, 1)), {}};
  out.entries = builder.entries;

  if (*builder.kind == "word") {
    // desugared multi-symbol edges append fresh unlabeled states
    size_t total = declared;
    struct Step {
      size_t src, dst;
      Symbol sym;
      Value weight;
      bool eps;
    };
    std::vector<Step> steps;
    for (const auto& edge : builder.word_edges) {
      Value weight = edge.weight.value_or(spec->one());
      if (edge.label == "@eps") {
        steps.push_back({edge.src, edge.dst, "", weight, true});
      } else if (edge.label.front() == '"') {
        Word word = split_quoted_word(builder, {edge.line, {}}, edge.label);
        if (word.empty()) {
          steps.push_back({edge.src, edge.dst, "", weight, true});  // "" is an internal move
          continue;
        }
        size_t from = edge.src;
        for (size_t i = 0; i < word.size(); ++i) {
          size_t to = (i + 1 == word.size()) ? edge.dst : total++;
          steps.push_back({from, to, word[i], i == 0 ? weight : spec->one(), false});
          from = to;
        }
      } else {
        steps.push_back({edge.src, edge.dst, edge.label, weight, false});
      }
    }
    for (size_t i = declared; i < total; ++i) labels.push_back("s" + std::to_string(i));

    std::vector<KMatrix> letters(builder.alphabet.size(), KMatrix(spec, total, total));
    KMatrix eps(spec, total, total);
    bool has_eps = false;
    for (const Step& step : steps) {
      if (step.eps) {
        has_eps = true;
        eps.set(step.src, step.dst, spec->plus(eps.at(step.src, step.dst), step.weight));
        continue;
      }
      size_t index = 0;
      while (builder.alphabet[index] != step.sym) ++index;
      letters[index].set(step.src, step.dst,
                         spec->plus(letters[index].at(step.src, step.dst), step.weight));
    }
    KMatrix finals(spec, total, exit_arity);
    for (const auto& f : builder.finals) {
      Value w = f.weight.value_or(spec->one());
      finals.set(f.state, f.exit, spec->plus(finals.at(f.state, f.exit), w));
    }
    out.automaton =
        WordAutomaton(spec, total, builder.alphabet, std::move(letters),
                      has_eps ? std::optional<KMatrix>(std::move(eps)) : std::nullopt,
                      std::move(finals), std::move(labels));
  } else {
    std::vector<TreeAutomaton::Rule> rules;
    for (const auto& edge : builder.tree_edges)
      rules.push_back(
          {edge.src, edge.sym, edge.left, edge.right, edge.weight.value_or(spec->one())});
    KMatrix finals(spec, declared, exit_arity);
    for (const auto& f : builder.finals) {
      Value w = f.weight.value_or(spec->one());
      finals.set(f.state, f.exit, spec->plus(finals.at(f.state, f.exit), w));
    }
    out.automaton = TreeAutomaton(spec, declared, builder.alphabet, std::move(rules),
                                  std::move(finals), std::move(labels));
  }
  return out;
}

}  // namespace

LoadedAutomaton parse_automaton(const std::string& text) {
  FileBuilder builder;
  std::vector<RawLine> lines = tokenize(text);

  for (const RawLine& line : lines) {
    const auto& t = line.tokens;
    const std::string& directive = t[0];
    if (directive == "kind") {
      if (t.size() != 2 || (t[1] != "word" && t[1] != "tree"))
        throw ParseError(line.number, "expected 'kind word' or 'kind tree'");
      if (builder.kind) throw ParseError(line.number, "duplicate kind");
      builder.kind = t[1];
    } else if (directive == "semiring") {
      if (t.size() != 2) throw ParseError(line.number, "expected 'semiring <name>'");
      builder.spec = spec_by_name(t[1]);
      if (!builder.spec) throw ParseError(line.number, "unknown semiring '" + t[1] + "'");
    } else if (directive == "alphabet") {
      builder.alphabet.assign(t.begin() + 1, t.end());
    } else if (directive == "states") {
      if (t.size() != 2) throw ParseError(line.number, "expected 'states <n>'");
      builder.states = parse_index(line, t[1], "state count");
    }
  }
  if (!builder.kind) throw ParseError("missing 'kind' directive");
  if (!builder.spec) throw ParseError("missing 'semiring' directive");
  if (!builder.states) throw ParseError("missing 'states' directive");

  for (const RawLine& line : lines) {
    const auto& t = line.tokens;
    const std::string& directive = t[0];
    if (directive == "kind" || directive == "semiring" || directive == "alphabet" ||
        directive == "states")
      continue;
    if (directive == "edge") {
      if (*builder.kind == "word") {
        if (t.size() != 4 && t.size() != 5)
          throw ParseError(line.number, "expected 'edge <src> <label> <dst> [<weight>]'");
        FileBuilder::WordEdge edge{line.number,
                                   builder.check_state(line, parse_index(line, t[1], "state")),
                                   t[2],
                                   builder.check_state(line, parse_index(line, t[3], "state")),
                                   std::nullopt};
        if (t.size() == 5) edge.weight = builder.parse_weight(line, t[4]);
        if (edge.label != "@eps" && edge.label.front() != '"') builder.check_symbol(line, edge.label);
        builder.word_edges.push_back(std::move(edge));
      } else {
        if (t.size() != 5 && t.size() != 6)
          throw ParseError(line.number, "expected 'edge <src> <sym> <left> <right> [<weight>]'");
        builder.check_symbol(line, t[2]);
        FileBuilder::TreeEdge edge{line.number,
                                   builder.check_state(line, parse_index(line, t[1], "state")),
                                   t[2],
                                   builder.check_state(line, parse_index(line, t[3], "state")),
                                   builder.check_state(line, parse_index(line, t[4], "state")),
                                   std::nullopt};
        if (t.size() == 6) edge.weight = builder.parse_weight(line, t[5]);
        builder.tree_edges.push_back(std::move(edge));
      }
    } else if (directive == "final") {
      if (t.size() < 2 || t.size() > 4)
        throw ParseError(line.number, "expected 'final <state> [<exit-index>] [<weight>]'");
      FileBuilder::Final f{line.number, builder.check_state(line, parse_index(line, t[1], "state")),
                           0, std::nullopt};
      if (t.size() >= 3) f.exit = parse_index(line, t[2], "exit index");
      if (t.size() == 4) f.weight = builder.parse_weight(line, t[3]);
      builder.finals.push_back(f);
    } else if (directive == "entry") {
      if (t.size() != 3) throw ParseError(line.number, "expected 'entry <name> <state>'");
      builder.entries.emplace_back(t[1],
                                   builder.check_state(line, parse_index(line, t[2], "state")));
    } else if (directive == "label") {
      if (t.size() != 3) throw ParseError(line.number, "expected 'label <state> <display>'");
      builder.labels.emplace_back(builder.check_state(line, parse_index(line, t[1], "state")),
                                  t[2]);
    } else {
      throw ParseError(line.number, "unknown directive '" + directive + "'");
    }
  }

  return build(builder);
}

LoadedAutomaton load_automaton_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_automaton(buffer.str());
}

namespace {

bool default_label(const std::string& label, size_t state) {
  return label == "q" + std::to_string(state);
}

}  // namespace

std::string render_automaton(const LoadedAutomaton& loaded) {
  std::ostringstream out;
  const SpecPtr& spec = loaded.spec();
  const bool word = loaded.is_word();
  const KMatrix& exit_weights = word ? loaded.word().finals() : loaded.tree().finals();

  // the exit arity is only visible through the largest marker, so a fully
  // zero last column needs one explicit zero-weight final to survive reparsing
  bool pin_arity = exit_weights.cols() > 1 && exit_weights.rows() > 0;
  for (size_t i = 0; i < exit_weights.rows() && pin_arity; ++i)
    pin_arity = spec->eq(exit_weights.at(i, exit_weights.cols() - 1), spec->zero());

  out << "kind " << (word ? "word" : "tree") << '\n';
  out << "semiring " << spec->name() << '\n';
  const auto& alphabet = word ? loaded.word().alphabet() : loaded.tree().alphabet();
  if (!alphabet.empty()) {
    out << "alphabet";
    for (const Symbol& a : alphabet) out << ' ' << a;
    out << '\n';
  }
  out << "states " << loaded.states() << '\n';

  const auto& labels = word ? loaded.word().labels() : loaded.tree().labels();
  for (size_t i = 0; i < labels.size(); ++i)
    if (!default_label(labels[i], i)) out << "label " << i << ' ' << labels[i] << '\n';

  const SemiringSpec& s = *spec;
  auto write_weight = [&](Value w) {
    if (!s.eq(w, s.one())) out << ' ' << s.format(w);
  };

  if (word) {
    const WordAutomaton& a = loaded.word();
    for (size_t li = 0; li < alphabet.size(); ++li)
      for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) {
          Value w = a.letter_at(li).at(i, j);
          if (s.eq(w, s.zero())) continue;
          out << "edge " << i << ' ' << alphabet[li] << ' ' << j;
          write_weight(w);
          out << '\n';
        }
    if (a.has_eps())
      for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) {
          Value w = a.eps().at(i, j);
          if (s.eq(w, s.zero())) continue;
          out << "edge " << i << " @eps " << j;
          write_weight(w);
          out << '\n';
        }
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t e = 0; e < a.exit_arity(); ++e) {
        Value w = a.finals().at(i, e);
        if (s.eq(w, s.zero())) continue;
        out << "final " << i;
        if (e != 0 || !s.eq(w, s.one())) out << ' ' << e;
        write_weight(w);
        out << '\n';
      }
  } else {
    const TreeAutomaton& a = loaded.tree();
    for (const auto& rule : a.rules()) {
      out << "edge " << rule.src << ' ' << rule.sym << ' ' << rule.left << ' ' << rule.right;
      write_weight(rule.weight);
      out << '\n';
    }
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t e = 0; e < a.exit_arity(); ++e) {
        Value w = a.finals().at(i, e);
        if (s.eq(w, s.zero())) continue;
        out << "final " << i;
        if (e != 0 || !s.eq(w, s.one())) out << ' ' << e;
        write_weight(w);
        out << '\n';
      }
  }

  if (pin_arity)
    out << "final 0 " << exit_weights.cols() - 1 << ' ' << s.format(s.zero()) << '\n';

  for (const auto& [name, state] : loaded.entries) out << "entry " << name << ' ' << state << '\n';
  return out.str();
}

RegularWordMap as_regular_map(const LoadedAutomaton& loaded) {
  if (!loaded.is_word()) throw ValidationError("regular maps need a word automaton");
  std::vector<size_t> entries;
  for (const auto& [name, state] : loaded.entries) entries.push_back(state);
  if (entries.empty()) entries.push_back(0);
  return {std::move(entries), loaded.word()};
}

Word parse_word_text(const std::vector<Symbol>& alphabet, const std::string& text) {
  if (text.empty() || text == "@eps") return {};
  if (text.find(' ') != std::string::npos) {
    Word word;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
      bool known = false;
      for (const Symbol& a : alphabet) known = known || a == token;
      if (!known) throw UnknownSymbol("symbol '" + token + "' not in alphabet");
      word.push_back(token);
    }
    return word;
  }
  Word word;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t best = 0;
    for (const Symbol& sym : alphabet)
      if (text.compare(pos, sym.size(), sym) == 0 && sym.size() > best) best = sym.size();
    if (best == 0)
      throw UnknownSymbol("cannot split '" + text + "' into alphabet symbols at offset " +
                          std::to_string(pos));
    word.push_back(text.substr(pos, best));
    pos += best;
  }
  return word;
}

}  // namespace autalg

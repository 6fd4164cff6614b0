#include "autalg/kmatrix.hpp"

#include <sstream>

namespace autalg {

namespace {

void require_same_spec(const KMatrix& f, const KMatrix& g, const char* op) {
  if (!same_spec(*f.spec(), *g.spec()))
    throw SpecMismatch(std::string(op) + ": specs '" + f.spec()->name() + "' and '" +
                       g.spec()->name() + "' differ");
}

void require_same_shape(const KMatrix& f, const KMatrix& g, const char* op) {
  require_same_spec(f, g, op);
  if (f.rows() != g.rows() || f.cols() != g.cols())
    throw DimensionMismatch(std::string(op) + ": shapes " + std::to_string(f.rows()) + "x" +
                            std::to_string(f.cols()) + " and " + std::to_string(g.rows()) + "x" +
                            std::to_string(g.cols()) + " differ");
}

}  // namespace

KMatrix::KMatrix(SpecPtr spec, size_t rows, size_t cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols), entries_(rows * cols, spec_->zero()) {}

KMatrix::KMatrix(SpecPtr spec, size_t rows, size_t cols, std::vector<Value> entries)
    : spec_(std::move(spec)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw DimensionMismatch("KMatrix: " + std::to_string(entries_.size()) + " entries for a " +
                            std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
  for (Value v : entries_)
    if (!spec_->in_carrier(v))
      throw ValidationError("KMatrix: " + spec_->format(v) + " is not a '" + spec_->name() +
                            "' carrier value");
}

std::vector<Value> KMatrix::row(size_t i) const {
  return {entries_.begin() + static_cast<long>(i * cols_),
          entries_.begin() + static_cast<long>((i + 1) * cols_)};
}

std::vector<Value> KMatrix::col(size_t j) const {
  std::vector<Value> out(rows_);
  for (size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

KMatrix identity(SpecPtr spec, size_t n) {
  KMatrix m(spec, n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, spec->one());
  return m;
}

KMatrix zero_matrix(SpecPtr spec, size_t rows, size_t cols) { return KMatrix(spec, rows, cols); }

KMatrix base_map(SpecPtr spec, const std::vector<size_t>& image, size_t cols) {
  KMatrix m(spec, image.size(), cols);
  for (size_t i = 0; i < image.size(); ++i) {
    if (image[i] >= cols)
      throw IndexOutOfRange("base_map: image " + std::to_string(image[i]) + " of " +
                            std::to_string(i) + " exceeds " + std::to_string(cols) + " targets");
    m.set(i, image[i], spec->one());
  }
  return m;
}

KMatrix compose(const KMatrix& f, const KMatrix& g) {
  require_same_spec(f, g, "compose");
  if (f.cols() != g.rows())
    throw DimensionMismatch("compose: " + std::to_string(f.cols()) + " targets vs " +
                            std::to_string(g.rows()) + " sources");
  const SemiringSpec& s = *f.spec();
  KMatrix out(f.spec(), f.rows(), g.cols());
  for (size_t i = 0; i < f.rows(); ++i)
    for (size_t k = 0; k < g.cols(); ++k) {
      Value acc = s.zero();
      for (size_t j = 0; j < f.cols(); ++j) acc = s.plus(acc, s.times(f.at(i, j), g.at(j, k)));
      out.set(i, k, acc);
    }
  return out;
}

KMatrix cotuple(const std::vector<KMatrix>& fs) {
  if (fs.empty()) throw ColsMismatch("cotuple: empty sequence");
  size_t total = 0;
  for (const KMatrix& f : fs) {
    require_same_spec(fs.front(), f, "cotuple");
    if (f.cols() != fs.front().cols())
      throw ColsMismatch("cotuple: block with " + std::to_string(f.cols()) + " columns among " +
                         std::to_string(fs.front().cols()));
    total += f.rows();
  }
  KMatrix out(fs.front().spec(), total, fs.front().cols());
  size_t offset = 0;
  for (const KMatrix& f : fs) {
    for (size_t i = 0; i < f.rows(); ++i)
      for (size_t j = 0; j < f.cols(); ++j) out.set(offset + i, j, f.at(i, j));
    offset += f.rows();
  }
  return out;
}

bool leq(const KMatrix& f, const KMatrix& g) {
  require_same_shape(f, g, "leq");
  const SemiringSpec& s = *f.spec();
  for (size_t i = 0; i < f.rows(); ++i)
    for (size_t j = 0; j < f.cols(); ++j)
      if (!s.leq(f.at(i, j), g.at(i, j))) return false;
  return true;
}

bool matrix_eq(const KMatrix& f, const KMatrix& g) {
  require_same_shape(f, g, "matrix_eq");
  const SemiringSpec& s = *f.spec();
  for (size_t i = 0; i < f.rows(); ++i)
    for (size_t j = 0; j < f.cols(); ++j)
      if (!s.eq(f.at(i, j), g.at(i, j))) return false;
  return true;
}

KMatrix transpose(const KMatrix& f) {
  KMatrix out(f.spec(), f.cols(), f.rows());
  for (size_t i = 0; i < f.rows(); ++i)
    for (size_t j = 0; j < f.cols(); ++j) out.set(j, i, f.at(i, j));
  return out;
}

KMatrix entrywise_plus(const KMatrix& f, const KMatrix& g) {
  require_same_shape(f, g, "entrywise_plus");
  const SemiringSpec& s = *f.spec();
  KMatrix out(f.spec(), f.rows(), f.cols());
  for (size_t i = 0; i < f.rows(); ++i)
    for (size_t j = 0; j < f.cols(); ++j) out.set(i, j, s.plus(f.at(i, j), g.at(i, j)));
  return out;
}

LawReport check_adjunction(const KMatrix& f) {
  const SemiringSpec& s = *f.spec();
  for (size_t i = 0; i < f.rows(); ++i) {
    size_t ones = 0;
    for (size_t j = 0; j < f.cols(); ++j) {
      if (s.eq(f.at(i, j), s.one()))
        ++ones;
      else if (!s.eq(f.at(i, j), s.zero()))
        throw NotABaseMap("check_adjunction: entry (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") is " + s.format(f.at(i, j)));
    }
    if (ones != 1)
      throw NotABaseMap("check_adjunction: row " + std::to_string(i) + " holds " +
                        std::to_string(ones) + " ones");
  }

  const KMatrix dual = transpose(f);
  LawReport report;
  report.checks.push_back(
      {"identity <= compose(f, transpose(f))", leq(identity(f.spec(), f.rows()), compose(f, dual)),
       ""});
  report.checks.push_back(
      {"compose(transpose(f), f) <= identity", leq(compose(dual, f), identity(f.spec(), f.cols())),
       ""});
  return report;
}

StarResult star_with_iterations(const KMatrix& alpha, size_t max_iter) {
  if (alpha.rows() != alpha.cols())
    throw DimensionMismatch("star: matrix is " + std::to_string(alpha.rows()) + "x" +
                            std::to_string(alpha.cols()));
  const SemiringSpec& s = *alpha.spec();
  // approx carriers iterate well below the published tolerance so that
  // pipelines composing several closures still land within it
  const double margin = s.approx() ? s.tolerance() * 1e-3 : 0.0;
  auto settled = [&](const KMatrix& a, const KMatrix& b) {
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < a.cols(); ++j) {
        Value x = a.at(i, j), y = b.at(i, j);
        if (s.approx() && !(std::isinf(x) || std::isinf(y))) {
          if (std::abs(x - y) > margin) return false;
        } else if (x != y) {
          return false;
        }
      }
    return true;
  };
  const KMatrix id = identity(alpha.spec(), alpha.rows());
  KMatrix current = id;
  for (size_t k = 0; k < max_iter; ++k) {
    KMatrix next = entrywise_plus(id, compose(alpha, current));
    if (settled(next, current)) return {next, k};
    current = next;
  }
  throw NoConvergence("star: no fixpoint within " + std::to_string(max_iter) + " iterations");
}

KMatrix star(const KMatrix& alpha, size_t max_iter) {
  return star_with_iterations(alpha, max_iter).matrix;
}

std::string to_tsv(const KMatrix& m) {
  std::ostringstream out;
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) out << '\t';
      out << m.spec()->format(m.at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace autalg

#pragma once

#include <string>
#include <vector>

#include "autalg/semiring.hpp"

namespace autalg {

/// A Kleisli morphism p -> q presented as a p x q matrix of semiring values:
/// entry (i, j) is the weight of target j in the image of source i. Rows are
/// sources, columns targets, and compose(f, g) reads "f then g".
///
/// Zero-dimension matrices are legal and empty. Values are treated as
/// immutable once built; every operation returns a fresh matrix.
class KMatrix {
 public:
  KMatrix(SpecPtr spec, size_t rows, size_t cols);
  KMatrix(SpecPtr spec, size_t rows, size_t cols, std::vector<Value> entries);

  const SpecPtr& spec() const { return spec_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Value at(size_t i, size_t j) const { return entries_[i * cols_ + j]; }
  void set(size_t i, size_t j, Value v) { entries_[i * cols_ + j] = v; }

  std::vector<Value> row(size_t i) const;
  std::vector<Value> col(size_t j) const;

 private:
  SpecPtr spec_;
  size_t rows_, cols_;
  std::vector<Value> entries_;
};

/// Diagonal one, off-diagonal zero.
KMatrix identity(SpecPtr spec, size_t n);

KMatrix zero_matrix(SpecPtr spec, size_t rows, size_t cols);

/// Embeds a total function {0..p-1} -> {0..q-1}: entry (i, image[i]) is one,
/// everything else zero. Throws IndexOutOfRange when an image exceeds cols.
KMatrix base_map(SpecPtr spec, const std::vector<size_t>& image, size_t cols);

/// entry(i, k) = sum_j f(i, j) * g(j, k). Throws DimensionMismatch when
/// f.cols != g.rows and SpecMismatch on different coefficient algebras.
KMatrix compose(const KMatrix& f, const KMatrix& g);

/// Vertical stacking in sequence order; all blocks must share spec and cols.
KMatrix cotuple(const std::vector<KMatrix>& fs);

/// Entrywise order; true iff spec.leq holds at every position.
bool leq(const KMatrix& f, const KMatrix& g);

/// Entrywise equality (within tolerance for approx specs).
bool matrix_eq(const KMatrix& f, const KMatrix& g);

/// The duality operator: entry (j, i) = f(i, j). Involutive, reverses
/// composition and preserves the entrywise order.
KMatrix transpose(const KMatrix& f);

KMatrix entrywise_plus(const KMatrix& f, const KMatrix& g);

/// For a base map f the transpose is its right adjoint: composing through the
/// target stays below the identity while composing through the source stays
/// above it. Reports both verdicts; throws NotABaseMap when f does not have
/// exactly one `one` per row and zeros elsewhere.
LawReport check_adjunction(const KMatrix& f);

struct StarResult {
  KMatrix matrix;
  size_t iterations;
};

/// Least fixpoint of X = id + alpha * X, iterated from X_0 = id until two
/// consecutive iterates agree (exactly, or within tolerance for approx
/// specs). The result satisfies id <= alpha*, alpha <= alpha* and
/// alpha* ; alpha* <= alpha*.
///
/// Over non-idempotent specs the iterates are the partial sums of the powers
/// of alpha; they stabilize when weights saturate at the top element or the
/// tail drops below tolerance, and otherwise NoConvergence is thrown after
/// max_iter rounds.
KMatrix star(const KMatrix& alpha, size_t max_iter = 10000);
StarResult star_with_iterations(const KMatrix& alpha, size_t max_iter = 10000);

/// Rows as tab-separated formatted values, one line per row.
std::string to_tsv(const KMatrix& m);

}  // namespace autalg

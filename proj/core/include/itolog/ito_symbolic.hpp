#pragma once

// Specializations of the surjection logarithm: the log of the Ito flow map
// of a driver system, and the entry-wise log of the Ito-Taylor series of a
// linear matrix SDE dX = X_- dM.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "itolog/qshuffle.hpp"
#include "itolog/rational.hpp"
#include "itolog/surjection.hpp"

namespace itolog {

/// Drivers X^1..X^N, optionally followed by their quadratic variations
/// X^{N+i} = [X^i, X^i].
struct DriverAlphabet {
  std::size_t n_primary = 1;
  bool continuous = true;             ///< brackets of three or more vanish
  bool cross_brackets_vanish = true;  ///< [X^i, X^j] = 0 for i != j
  bool paired_qv = true;              ///< letters N+1..2N are the quadratic variations

  /// General semimartingales with jumps: no vanishing rule applies.
  static DriverAlphabet with_jumps(std::size_t n_primary);

  /// Number of integrator letters: 2N with paired quadratic variations, else N.
  std::size_t size() const noexcept { return paired_qv ? 2 * n_primary : n_primary; }
  void validate() const;
};

/// One summand template (-1)^{d(f)}/(n C(n-1,d(f))) V_{i1}...V_{in} I^{J}_{A(f)},
/// kept symbolic in the driver word J = (i1..in).
struct LogTerm {
  Surjection f;
  OrderedSetPartition partition;  ///< A(f), blocks in integration order
  Rational coeff;

  std::size_t n() const noexcept { return f.arity(); }
  /// I^J_{A(f)} for a concrete driver word J of length n.
  BracketWord instantiate(std::span<const Letter> drivers) const;
};

/// Templates for every f in Sj_n, n <= order (restricted to fibers of size
/// <= 2 in continuous mode). Within a grade: by descent count, then by
/// decreasing number of blocks, then lexicographic in f.
/// Throws CapExceeded when order > grade_cap().
std::vector<LogTerm> log_flow_terms(const DriverAlphabet& alphabet, std::size_t order);

/// Symbolic position names i, j, k, l, m, p, q, r, s (then x10, x11, ...).
std::string position_name(std::size_t position);
/// "I_{j[i,k]}" / "I_i"
std::string render_integral(const OrderedSetPartition& partition);
/// "-1/6 V_i V_j V_k I_{j[i,k]}"; a unit coefficient is omitted.
std::string render_template(const LogTerm& term);

/// Applies the standing assumptions of `alphabet` to every block:
///  - continuous: blocks of bracket order >= 3 vanish, counting a quadratic
///    variation letter as order 2;
///  - cross_brackets_vanish: {i, j} with i != j <= N vanishes;
///  - paired_qv: {i, i} with i <= N becomes the single letter N + i.
Expansion apply_vanishing_rules(const Expansion& e, const DriverAlphabet& alphabet);

using OperatorWord = std::vector<Letter>;

/// log S instantiated over every driver word: operator word V_J -> its
/// coefficient Expansion, after the vanishing rules. Zero entries dropped.
std::map<OperatorWord, Expansion> log_flow_expansion(const DriverAlphabet& alphabet, std::size_t order);

/// Letter encoding of the matrix entry M^{row,col} (1-based), row-major:
/// (row - 1) * dim + col.
Letter pair_letter(std::size_t dim, std::size_t row, std::size_t col);
/// Inverse of pair_letter.
std::pair<std::size_t, std::size_t> pair_indices(std::size_t dim, Letter letter);

/// Square matrix of Expansions over pair letters.
class MatrixExpansion {
 public:
  explicit MatrixExpansion(std::size_t dim);

  static MatrixExpansion identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  /// 0-based indices.
  Expansion& at(std::size_t row, std::size_t col) { return entries_.at(row * dim_ + col); }
  const Expansion& at(std::size_t row, std::size_t col) const { return entries_.at(row * dim_ + col); }
  const std::vector<Expansion>& entries() const noexcept { return entries_; }

  MatrixExpansion grade(std::size_t weight) const;
  MatrixExpansion truncated(std::size_t max_weight) const;
  std::size_t max_weight() const noexcept;
  bool has_constant_term() const;

  MatrixExpansion& operator+=(const MatrixExpansion& other);
  MatrixExpansion& operator-=(const MatrixExpansion& other);
  MatrixExpansion& operator*=(const Rational& scale);
  friend MatrixExpansion operator+(MatrixExpansion a, const MatrixExpansion& b) { return a += b; }
  friend MatrixExpansion operator-(MatrixExpansion a, const MatrixExpansion& b) { return a -= b; }
  friend bool operator==(const MatrixExpansion&, const MatrixExpansion&) = default;

 private:
  std::size_t dim_;
  std::vector<Expansion> entries_;
};

/// Matrix product whose entry products are quasi-shuffles, truncated at
/// `max_weight`.
MatrixExpansion multiply(const MatrixExpansion& a, const MatrixExpansion& b, std::size_t max_weight);

/// Words of the (row, col) entry of int M^n (0-based row/col):
/// (M^{row,i1})(M^{i1,i2})...(M^{i_{n-1},col}) over all contraction indices.
std::vector<BracketWord> contraction_words(std::size_t dim, std::size_t row, std::size_t col, std::size_t n);

/// sum_{n <= order} int M^n. Throws CapExceeded when order > weight_cap().
MatrixExpansion matrix_ito_taylor(std::size_t dim, std::size_t order);

/// sum_{n <= order} sum_I (-1)^{|I|}/(n C(n-1,|I|)) D_I^n int M^n, applied
/// entry-wise through the surjection action. Throws CapExceeded when
/// order > grade_cap().
MatrixExpansion matrix_log(std::size_t dim, std::size_t order);

/// sum_k me^k / k! truncated at weight `order`; `me` must have no constant term.
MatrixExpansion matrix_exp(const MatrixExpansion& me, std::size_t order);

}  // namespace itolog

#pragma once

// The algebra Sj of surjections with the diamond product, descent classes,
// the embedding of noncommutative symmetric functions, and the logarithm of
// the identity series I = sum_n p_n.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itolog/qshuffle.hpp"
#include "itolog/rational.hpp"

namespace itolog {

/// A surjection f: [n] -> [k] stored as its value sequence f(1)...f(n).
/// The default-constructed value is the arity-0 surjection, the unit of Sj.
class Surjection {
 public:
  Surjection() = default;
  /// Throws std::invalid_argument unless the values cover exactly 1..max.
  explicit Surjection(std::vector<std::uint32_t> values);
  Surjection(std::initializer_list<std::uint32_t> values);

  static Surjection identity(std::size_t n);

  const std::vector<std::uint32_t>& values() const noexcept { return values_; }
  std::uint32_t operator[](std::size_t i) const { return values_[i]; }
  std::size_t arity() const noexcept { return values_.size(); }
  /// Size k of the image.
  std::size_t rank() const noexcept;
  bool is_bijection() const noexcept { return rank() == arity(); }
  std::size_t max_fiber() const;

  friend bool operator==(const Surjection&, const Surjection&) = default;
  // arity first, then lexicographic on values
  friend std::strong_ordering operator<=>(const Surjection& a, const Surjection& b);

 private:
  std::vector<std::uint32_t> values_;
};

/// Replaces each letter by its rank among the distinct letters.
/// An empty word packs to the unit surjection.
Surjection pack(std::span<const std::uint32_t> word);

/// "212" when all values are <= 9, otherwise "(1,10,2,...)". Unit: "".
std::string to_string(const Surjection& f);
/// Inverse of to_string; also accepts the digit string wrapped in parentheses.
Surjection parse_surjection(std::string_view text);

/// Finite linear combination of surjections, graded by arity.
class SurjElement {
 public:
  using Terms = std::map<Surjection, Rational>;

  SurjElement() = default;
  explicit SurjElement(const Surjection& f, const Rational& coeff = 1);

  static SurjElement unit() { return SurjElement(Surjection{}); }

  void add(const Surjection& f, const Rational& coeff);

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Surjection& f) const;

  SurjElement grade(std::size_t n) const;
  SurjElement truncated(std::size_t max_grade) const;
  std::size_t max_grade() const noexcept;
  bool is_homogeneous() const noexcept;

  SurjElement& operator+=(const SurjElement& other);
  SurjElement& operator-=(const SurjElement& other);
  SurjElement& operator*=(const Rational& scale);

  friend SurjElement operator+(SurjElement a, const SurjElement& b) { return a += b; }
  friend SurjElement operator-(SurjElement a, const SurjElement& b) { return a -= b; }
  friend SurjElement operator*(SurjElement a, const Rational& s) { return a *= s; }
  friend SurjElement operator*(const Rational& s, SurjElement a) { return a *= s; }
  friend bool operator==(const SurjElement&, const SurjElement&) = default;

 private:
  Terms terms_;
};

enum class DiamondMethod {
  kMerge,       ///< order-preserving merges of the two packed patterns
  kBruteForce,  ///< filter all of Sj_{n+m} by the packing condition (test oracle)
};

/// f <> g: every h of arity n+m with pack(h|first n) = f and pack(h|last m) = g.
SurjElement diamond(const Surjection& f, const Surjection& g, DiamondMethod method = DiamondMethod::kMerge);
/// Bilinear extension. Pairs whose grades sum beyond `max_grade` are skipped.
SurjElement diamond(const SurjElement& a, const SurjElement& b, std::optional<std::size_t> max_grade = std::nullopt,
                    DiamondMethod method = DiamondMethod::kMerge);

/// All surjections [n] -> [k] in lexicographic order. Requires 1 <= k <= n.
std::vector<Surjection> enumerate_surjections(std::size_t n, std::size_t k);
/// Same, restricted to fibers of size <= max_fiber.
std::vector<Surjection> enumerate_surjections_bounded(std::size_t n, std::size_t k, std::size_t max_fiber = 2);
/// All of Sj_n (every k), lexicographic. n = 0 yields the unit alone.
std::vector<Surjection> enumerate_surjections(std::size_t n);

/// Subsets of [n-1], 1-based positions.
using PositionSet = std::set<std::size_t>;

/// {i < n : f(i) >= f(i+1)}
PositionSet descent_set(const Surjection& f);
std::size_t descent_count(const Surjection& f);

/// D_I^n: sum of f in Sj_n with Desc(f) = I.
SurjElement descent_class(std::size_t n, const PositionSet& positions);
/// D_{subseteq I}^n: sum of f in Sj_n with Desc(f) contained in I.
SurjElement descent_class_within(std::size_t n, const PositionSet& positions);

/// Composition (n1,...,nk) indexing the basis 1_{n1} * ... * 1_{nk} of NCSF.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<std::size_t> parts);
  Composition(std::initializer_list<std::size_t> parts);

  const std::vector<std::size_t>& parts() const noexcept { return parts_; }
  std::size_t total() const noexcept;
  /// {n1, n1+n2, ..., n1+...+n_{k-1}}
  PositionSet partial_sums() const;

  /// The NCSF product 1_{n} * 1_{m} = 1_{n,m} (concatenation).
  friend Composition operator*(const Composition& a, const Composition& b);
  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<std::size_t> parts_;
};

/// iota(1_{n1..nk}) = D_{subseteq {n1, n1+n2, ...}}.
SurjElement iota(const Composition& c);

/// (-1)^d / (n * C(n-1, d)).
Rational bch_coefficient(std::size_t n, std::size_t d);

/// log(I) via the alternating power series of (I - 1) under <>, truncated at
/// grade N. Requires 1 <= N <= grade_cap().
SurjElement log_identity_series(std::size_t max_grade);

enum class ClosedForm {
  kDescentClasses,  ///< sum over f of (-1)^{d(f)} / (n C(n-1,d(f))) f
  kContainment,     ///< sum over I of (-1)^{|I|}/(|I|+1) D_{subseteq I}
};

SurjElement log_identity_closed_form(std::size_t max_grade, ClosedForm form = ClosedForm::kDescentClasses);

/// sum_k e^{<>k} / k! truncated at grade N. `e` must have no grade-0 term.
SurjElement exp_element(const SurjElement& e, std::size_t max_grade);

/// Restriction of the closed-form logarithm to bijections.
SurjElement strichartz_restriction(std::size_t max_grade);

/// f(w): block i is the product of the blocks of w at positions f^{-1}(i).
BracketWord apply_surjection(const Surjection& f, const BracketWord& word);
/// Linear extension; every term of `e` must have arity equal to word.length().
Expansion apply_surjection(const SurjElement& e, const BracketWord& word);

/// Ordered partition A_1 | ... | A_k of [n] into nonempty blocks (1-based).
class OrderedSetPartition {
 public:
  OrderedSetPartition() = default;
  /// Validates disjointness, covering of [n] and nonempty blocks; sorts
  /// each block.
  explicit OrderedSetPartition(std::vector<std::vector<std::size_t>> blocks);

  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept;  // n
  std::size_t max_block() const noexcept;

  /// A(f) = f^{-1}(1) | ... | f^{-1}(k)
  static OrderedSetPartition of(const Surjection& f);
  /// The surjection sending each position to the index of its block.
  Surjection to_surjection() const;

  friend bool operator==(const OrderedSetPartition&, const OrderedSetPartition&) = default;

 private:
  std::vector<std::vector<std::size_t>> blocks_;
};

}  // namespace itolog

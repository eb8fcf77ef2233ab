#pragma once

// Bracket words and the quasi-shuffle product.
//
// A BracketWord (B1)(B2)...(Bk) stands for the iterated Ito integral
// int(...(int dX^{B1})_- ...)_- dX^{Bk}, where each block B is a nonempty
// multiset of driver letters denoting the iterated square bracket of its
// members. Blocks multiply by multiset union, which is the commutative and
// associative letter product of the quasi-shuffle algebra.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include "itolog/rational.hpp"

namespace itolog {

using Letter = std::uint32_t;

/// Nonempty multiset of letters, stored sorted with multiplicity.
class Block {
 public:
  Block(std::initializer_list<Letter> letters);
  explicit Block(std::vector<Letter> letters);

  static Block single(Letter letter) { return Block({letter}); }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool is_singleton() const noexcept { return letters_.size() == 1; }

  friend bool operator==(const Block&, const Block&) = default;
  friend std::strong_ordering operator<=>(const Block&, const Block&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Multiset union.
Block block_product(const Block& a, const Block& b);

class BracketWord {
 public:
  BracketWord() = default;
  explicit BracketWord(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}
  BracketWord(std::initializer_list<Block> blocks) : blocks_(blocks) {}

  /// One singleton block per letter.
  static BracketWord from_letters(std::span<const Letter> letters);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Block& operator[](std::size_t i) const { return blocks_[i]; }
  std::size_t length() const noexcept { return blocks_.size(); }
  std::size_t weight() const noexcept;
  bool empty() const noexcept { return blocks_.empty(); }
  bool has_singleton_blocks() const noexcept;

  const Block& back() const { return blocks_.back(); }
  BracketWord without_last() const;
  BracketWord with_appended(const Block& b) const;
  BracketWord concat(const BracketWord& other) const;

  friend bool operator==(const BracketWord&, const BracketWord&) = default;
  // length first, then blockwise lexicographic
  friend std::strong_ordering operator<=>(const BracketWord& a, const BracketWord& b);

 private:
  std::vector<Block> blocks_;
};

/// Finite formal sum of bracket words with exact rational coefficients.
/// Zero coefficients are never stored.
class Expansion {
 public:
  using Terms = std::map<BracketWord, Rational>;

  Expansion() = default;
  explicit Expansion(const BracketWord& word, const Rational& coeff = 1);

  static Expansion unit() { return Expansion(BracketWord{}); }

  void add(const BracketWord& word, const Rational& coeff);

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const BracketWord& word) const;

  /// Homogeneous component of the given weight.
  Expansion grade(std::size_t weight) const;
  /// Terms of weight <= max_weight.
  Expansion truncated(std::size_t max_weight) const;
  std::size_t max_weight() const noexcept;
  bool has_constant_term() const;

  /// Appends `b` as a new last block of every word.
  Expansion with_appended(const Block& b) const;

  Expansion& operator+=(const Expansion& other);
  Expansion& operator-=(const Expansion& other);
  Expansion& operator*=(const Rational& scale);

  friend Expansion operator+(Expansion a, const Expansion& b) { return a += b; }
  friend Expansion operator-(Expansion a, const Expansion& b) { return a -= b; }
  friend Expansion operator*(Expansion a, const Rational& s) { return a *= s; }
  friend Expansion operator*(const Rational& s, Expansion a) { return a *= s; }
  friend bool operator==(const Expansion&, const Expansion&) = default;

 private:
  Terms terms_;
};

/// Quasi-shuffle product computed with the recursive half-shuffle rules.
/// Throws CapExceeded when weight(u) + weight(v) exceeds weight_cap().
Expansion qsh(const BracketWord& u, const BracketWord& v);
Expansion qsh(const Expansion& a, const Expansion& b);
/// Bilinear product that skips pairs whose combined weight exceeds
/// `max_weight`; the product is homogeneous, so this equals
/// qsh(a, b).truncated(max_weight).
Expansion qsh_truncated(const Expansion& a, const Expansion& b, std::size_t max_weight);

// Half-shuffles and the bullet product. Defined on nonempty words only;
// empty operands throw std::invalid_argument.
//   u up v   = (u' qsh v) a_n
//   u down v = (u qsh v') b_m
//   u . v    = (u' qsh v') (a_n * b_m)
Expansion half_up(const BracketWord& u, const BracketWord& v);
Expansion half_down(const BracketWord& u, const BracketWord& v);
Expansion bullet(const BracketWord& u, const BracketWord& v);
Expansion half_up(const Expansion& a, const Expansion& b);
Expansion half_down(const Expansion& a, const Expansion& b);
Expansion bullet(const Expansion& a, const Expansion& b);

/// Applies a value sequence f (onto [k], 1-based) to a word of the same
/// length: block i of the result is the product of the blocks at f^{-1}(i).
/// Throws std::invalid_argument on length mismatch or a non-surjective f.
BracketWord apply_values(std::span<const std::uint32_t> f, const BracketWord& word);

/// The same product written as a sum over surjections onto [k],
/// max(n,m) <= k <= n+m, increasing on the first n and the last m positions.
Expansion qsh_via_surjections(const BracketWord& u, const BracketWord& v);

/// Every bracket word of the given weight over letters 1..alphabet, ordered
/// as BracketWord. Weight 0 yields the unit word alone.
std::vector<BracketWord> enumerate_words(std::size_t weight, std::size_t alphabet);

/// Drops every term with a block of size >= 2 (null letter product).
Expansion shuffle_projection(const Expansion& e);

}  // namespace itolog

#include "itolog/qshuffle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "itolog/combinatorics.hpp"
#include "itolog/config.hpp"

namespace itolog {

Block::Block(std::initializer_list<Letter> letters) : Block(std::vector<Letter>(letters)) {}

Block::Block(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("block must contain at least one letter");
  for (Letter l : letters_) {
    if (l == 0) throw std::invalid_argument("letters are 1-based; got 0");
  }
  std::sort(letters_.begin(), letters_.end());
}

Block block_product(const Block& a, const Block& b) {
  std::vector<Letter> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.letters().begin(), a.letters().end(), b.letters().begin(), b.letters().end(),
             std::back_inserter(merged));
  return Block(std::move(merged));
}

BracketWord BracketWord::from_letters(std::span<const Letter> letters) {
  std::vector<Block> blocks;
  blocks.reserve(letters.size());
  for (Letter l : letters) blocks.push_back(Block::single(l));
  return BracketWord(std::move(blocks));
}

std::size_t BracketWord::weight() const noexcept {
  std::size_t w = 0;
  for (const auto& b : blocks_) w += b.size();
  return w;
}

bool BracketWord::has_singleton_blocks() const noexcept {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.is_singleton(); });
}

BracketWord BracketWord::without_last() const {
  if (blocks_.empty()) throw std::invalid_argument("empty word has no last block");
  return BracketWord(std::vector<Block>(blocks_.begin(), blocks_.end() - 1));
}

BracketWord BracketWord::with_appended(const Block& b) const {
  std::vector<Block> blocks = blocks_;
  blocks.push_back(b);
  return BracketWord(std::move(blocks));
}

BracketWord BracketWord::concat(const BracketWord& other) const {
  std::vector<Block> blocks = blocks_;
  blocks.insert(blocks.end(), other.blocks_.begin(), other.blocks_.end());
  return BracketWord(std::move(blocks));
}

std::strong_ordering operator<=>(const BracketWord& a, const BracketWord& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.blocks_.begin(), a.blocks_.end(), b.blocks_.begin(),
                                                b.blocks_.end());
}

Expansion::Expansion(const BracketWord& word, const Rational& coeff) { add(word, coeff); }

void Expansion::add(const BracketWord& word, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(word, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Expansion::coefficient(const BracketWord& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? Rational(0) : it->second;
}

Expansion Expansion::grade(std::size_t weight) const {
  Expansion out;
  for (const auto& [w, c] : terms_) {
    if (w.weight() == weight) out.terms_.emplace_hint(out.terms_.end(), w, c);
  }
  return out;
}

Expansion Expansion::truncated(std::size_t max_weight) const {
  Expansion out;
  for (const auto& [w, c] : terms_) {
    if (w.weight() <= max_weight) out.terms_.emplace_hint(out.terms_.end(), w, c);
  }
  return out;
}

std::size_t Expansion::max_weight() const noexcept {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.weight());
  return m;
}

bool Expansion::has_constant_term() const { return terms_.contains(BracketWord{}); }

Expansion Expansion::with_appended(const Block& b) const {
  Expansion out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w.with_appended(b), c);
  return out;
}

Expansion& Expansion::operator+=(const Expansion& other) {
  for (const auto& [w, c] : other.terms_) add(w, c);
  return *this;
}

Expansion& Expansion::operator-=(const Expansion& other) {
  for (const auto& [w, c] : other.terms_) add(w, -c);
  return *this;
}

Expansion& Expansion::operator*=(const Rational& scale) {
  if (scale == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= scale;
  return *this;
}

namespace {

// table[i][j] = qsh(u[0..i), v[0..j)); filled by the three recursions.
std::vector<std::vector<Expansion>> qsh_table(const BracketWord& u, const BracketWord& v) {
  const std::size_t n = u.length();
  const std::size_t m = v.length();
  std::vector<std::vector<Expansion>> table(n + 1, std::vector<Expansion>(m + 1));
  table[0][0] = Expansion::unit();
  for (std::size_t i = 1; i <= n; ++i) table[i][0] = table[i - 1][0].with_appended(u[i - 1]);
  for (std::size_t j = 1; j <= m; ++j) table[0][j] = table[0][j - 1].with_appended(v[j - 1]);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      Expansion cell = table[i - 1][j].with_appended(u[i - 1]);
      cell += table[i][j - 1].with_appended(v[j - 1]);
      cell += table[i - 1][j - 1].with_appended(block_product(u[i - 1], v[j - 1]));
      table[i][j] = std::move(cell);
    }
  }
  return table;
}

void require_nonempty(const BracketWord& u, const BracketWord& v, const char* op) {
  if (u.empty() || v.empty()) {
    throw std::invalid_argument(std::string(op) + " is defined on nonempty words only");
  }
}

void check_weight(const BracketWord& u, const BracketWord& v) {
  check_cap(u.weight() + v.weight(), weight_cap(), "quasi-shuffle weight");
}

template <class WordOp>
Expansion bilinear(const Expansion& a, const Expansion& b, WordOp op) {
  Expansion out;
  for (const auto& [u, cu] : a.terms()) {
    for (const auto& [v, cv] : b.terms()) {
      Rational c = cu * cv;
      const Expansion uv = op(u, v);
      for (const auto& [w, cw] : uv.terms()) out.add(w, c * cw);
    }
  }
  return out;
}

}  // namespace

Expansion qsh(const BracketWord& u, const BracketWord& v) {
  check_weight(u, v);
  if (u.empty()) return Expansion(v);
  if (v.empty()) return Expansion(u);
  return qsh_table(u, v)[u.length()][v.length()];
}

Expansion qsh(const Expansion& a, const Expansion& b) {
  return bilinear(a, b, [](const BracketWord& u, const BracketWord& v) { return qsh(u, v); });
}

Expansion qsh_truncated(const Expansion& a, const Expansion& b, std::size_t max_weight) {
  Expansion out;
  for (const auto& [u, cu] : a.terms()) {
    for (const auto& [v, cv] : b.terms()) {
      if (u.weight() + v.weight() > max_weight) continue;
      Rational c = cu * cv;
      const Expansion uv = qsh(u, v);
      for (const auto& [w, cw] : uv.terms()) out.add(w, c * cw);
    }
  }
  return out;
}

Expansion half_up(const BracketWord& u, const BracketWord& v) {
  require_nonempty(u, v, "half_up");
  check_weight(u, v);
  return qsh(u.without_last(), v).with_appended(u.back());
}

Expansion half_down(const BracketWord& u, const BracketWord& v) {
  require_nonempty(u, v, "half_down");
  check_weight(u, v);
  return qsh(u, v.without_last()).with_appended(v.back());
}

Expansion bullet(const BracketWord& u, const BracketWord& v) {
  require_nonempty(u, v, "bullet");
  check_weight(u, v);
  return qsh(u.without_last(), v.without_last()).with_appended(block_product(u.back(), v.back()));
}

Expansion half_up(const Expansion& a, const Expansion& b) {
  return bilinear(a, b, [](const BracketWord& u, const BracketWord& v) { return half_up(u, v); });
}

Expansion half_down(const Expansion& a, const Expansion& b) {
  return bilinear(a, b, [](const BracketWord& u, const BracketWord& v) { return half_down(u, v); });
}

Expansion bullet(const Expansion& a, const Expansion& b) {
  return bilinear(a, b, [](const BracketWord& u, const BracketWord& v) { return bullet(u, v); });
}

BracketWord apply_values(std::span<const std::uint32_t> f, const BracketWord& word) {
  if (f.size() != word.length()) {
    throw std::invalid_argument("arity mismatch: surjection of arity " + std::to_string(f.size()) +
                                " applied to word of length " + std::to_string(word.length()));
  }
  if (f.empty()) return word;
  const std::uint32_t k = *std::max_element(f.begin(), f.end());
  std::vector<std::vector<Letter>> fibers(k);
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (f[p] == 0) throw std::invalid_argument("surjection values are 1-based");
    const auto& letters = word[p].letters();
    fibers[f[p] - 1].insert(fibers[f[p] - 1].end(), letters.begin(), letters.end());
  }
  std::vector<Block> blocks;
  blocks.reserve(k);
  for (auto& letters : fibers) {
    if (letters.empty()) throw std::invalid_argument("value sequence is not onto [k]");
    blocks.emplace_back(std::move(letters));
  }
  return BracketWord(std::move(blocks));
}

Expansion qsh_via_surjections(const BracketWord& u, const BracketWord& v) {
  check_weight(u, v);
  const BracketWord uv = u.concat(v);
  Expansion out;
  for_each_quasi_shuffle(u.length(), v.length(),
                         [&](std::span<const std::uint32_t> f) { out.add(apply_values(f, uv), 1); });
  return out;
}

Expansion shuffle_projection(const Expansion& e) {
  Expansion out;
  for (const auto& [w, c] : e.terms()) {
    if (w.has_singleton_blocks()) out.add(w, c);
  }
  return out;
}

namespace {

// Multisets of `size` letters from [first, alphabet], appended to `prefix`.
void for_each_block(std::size_t size, Letter first, std::size_t alphabet, std::vector<Letter>& prefix,
                    std::vector<Block>& out) {
  if (size == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (Letter l = first; l <= alphabet; ++l) {
    prefix.push_back(l);
    for_each_block(size - 1, l, alphabet, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<BracketWord> enumerate_words(std::size_t weight, std::size_t alphabet) {
  if (alphabet == 0 && weight > 0) throw std::invalid_argument("empty alphabet");
  std::vector<std::vector<Block>> blocks_of(weight + 1);
  for (std::size_t s = 1; s <= weight; ++s) {
    std::vector<Letter> prefix;
    for_each_block(s, 1, alphabet, prefix, blocks_of[s]);
  }
  // words[w] = all words of weight w, built by appending a last block
  std::vector<std::vector<BracketWord>> words(weight + 1);
  words[0].emplace_back();
  for (std::size_t w = 1; w <= weight; ++w) {
    for (std::size_t s = 1; s <= w; ++s) {
      for (const auto& head : words[w - s]) {
        for (const auto& b : blocks_of[s]) words[w].push_back(head.with_appended(b));
      }
    }
  }
  auto out = std::move(words[weight]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace itolog

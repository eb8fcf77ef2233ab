#pragma once

#include <ostream>
#include <random>

#include "itolog/qshuffle.hpp"
#include "itolog/surjection.hpp"
#include "itolog/serialization.hpp"
#include "oracles.hpp"

// Readable gtest failure output.
namespace itolog {
inline void PrintTo(const BracketWord& w, std::ostream* os) { *os << (w.empty() ? "1" : to_text(w)); }
inline void PrintTo(const Block& b, std::ostream* os) { *os << to_text(BracketWord({b})); }
inline void PrintTo(const Expansion& e, std::ostream* os) { *os << to_text(e); }
inline void PrintTo(const SurjElement& e, std::ostream* os) { *os << to_text(e); }
inline void PrintTo(const Surjection& f, std::ostream* os) { *os << "(" << to_string(f) << ")"; }
}  // namespace itolog

namespace test {

inline oracle::Word to_oracle(const itolog::BracketWord& w) {
  oracle::Word out;
  for (const auto& b : w.blocks()) out.push_back(b.letters());
  return out;
}

inline itolog::Expansion from_oracle(const oracle::Sum& s) {
  itolog::Expansion e;
  for (const auto& [w, c] : s) {
    std::vector<itolog::Block> blocks;
    for (const auto& b : w) blocks.emplace_back(b);
    e.add(itolog::BracketWord(std::move(blocks)), c);
  }
  return e;
}

/// Random bracket word with `weight` letters drawn from 1..alphabet.
inline itolog::BracketWord random_word(std::mt19937_64& rng, std::size_t weight, std::uint32_t alphabet) {
  std::uniform_int_distribution<std::uint32_t> letter(1, alphabet);
  std::vector<itolog::Block> blocks;
  std::size_t left = weight;
  while (left > 0) {
    std::uniform_int_distribution<std::size_t> size(1, std::min<std::size_t>(left, 3));
    const std::size_t s = size(rng);
    std::vector<itolog::Letter> letters;
    for (std::size_t i = 0; i < s; ++i) letters.push_back(letter(rng));
    blocks.emplace_back(std::move(letters));
    left -= s;
  }
  return itolog::BracketWord(std::move(blocks));
}

inline itolog::Expansion random_expansion(std::mt19937_64& rng, std::size_t terms, std::size_t max_weight,
                                          std::uint32_t alphabet) {
  std::uniform_int_distribution<long> num(-7, 7);
  std::uniform_int_distribution<long> den(1, 6);
  std::uniform_int_distribution<std::size_t> weight(0, max_weight);
  itolog::Expansion e;
  for (std::size_t t = 0; t < terms; ++t) {
    e.add(random_word(rng, weight(rng), alphabet), itolog::make_rational(num(rng), den(rng)));
  }
  return e;
}

}  // namespace test

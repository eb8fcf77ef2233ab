#include "itolog/ito_symbolic.hpp"

#include <algorithm>
#include <stdexcept>

#include "itolog/config.hpp"

namespace itolog {

DriverAlphabet DriverAlphabet::with_jumps(std::size_t n_primary) {
  DriverAlphabet a;
  a.n_primary = n_primary;
  a.continuous = false;
  a.cross_brackets_vanish = false;
  a.paired_qv = false;
  return a;
}

void DriverAlphabet::validate() const {
  if (n_primary < 1) throw std::invalid_argument("driver alphabet needs at least one primary driver");
}

BracketWord LogTerm::instantiate(std::span<const Letter> drivers) const {
  if (drivers.size() != n()) {
    throw std::invalid_argument("driver word of length " + std::to_string(drivers.size()) +
                                " for a template of order " + std::to_string(n()));
  }
  return apply_surjection(f, BracketWord::from_letters(drivers));
}

std::vector<LogTerm> log_flow_terms(const DriverAlphabet& alphabet, std::size_t order) {
  alphabet.validate();
  check_cap(order, grade_cap(), "log-flow order");
  std::vector<LogTerm> out;
  for (std::size_t n = 1; n <= order; ++n) {
    std::vector<Surjection> fs;
    for (std::size_t k = 1; k <= n; ++k) {
      auto part = alphabet.continuous ? enumerate_surjections_bounded(n, k, 2) : enumerate_surjections(n, k);
      fs.insert(fs.end(), part.begin(), part.end());
    }
    std::sort(fs.begin(), fs.end(), [](const Surjection& a, const Surjection& b) {
      const auto da = descent_count(a);
      const auto db = descent_count(b);
      if (da != db) return da < db;
      if (a.rank() != b.rank()) return a.rank() > b.rank();
      return a < b;
    });
    for (auto& f : fs) {
      Rational c = bch_coefficient(n, descent_count(f));
      auto partition = OrderedSetPartition::of(f);
      out.push_back(LogTerm{std::move(f), std::move(partition), std::move(c)});
    }
  }
  return out;
}

std::string position_name(std::size_t position) {
  static constexpr char kNames[] = "ijklmpqrs";
  if (position >= 1 && position <= sizeof(kNames) - 1) return std::string(1, kNames[position - 1]);
  return "x" + std::to_string(position);
}

std::string render_integral(const OrderedSetPartition& partition) {
  std::string body;
  for (const auto& block : partition.blocks()) {
    if (block.size() == 1) {
      body += position_name(block.front());
      continue;
    }
    body += '[';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) body += ',';
      body += position_name(block[i]);
    }
    body += ']';
  }
  if (body.size() == 1) return "I_" + body;
  return "I_{" + body + "}";
}

std::string render_template(const LogTerm& term) {
  std::string out;
  if (term.coeff != 1) out = to_string(term.coeff) + " ";
  for (std::size_t p = 1; p <= term.n(); ++p) out += "V_" + position_name(p) + " ";
  out += render_integral(term.partition);
  return out;
}

Expansion apply_vanishing_rules(const Expansion& e, const DriverAlphabet& alphabet) {
  alphabet.validate();
  const Letter n_primary = static_cast<Letter>(alphabet.n_primary);
  Expansion out;
  for (const auto& [word, coeff] : e.terms()) {
    std::vector<Block> blocks;
    blocks.reserve(word.length());
    bool vanishes = false;
    for (const auto& block : word.blocks()) {
      const auto& letters = block.letters();
      if (alphabet.continuous) {
        std::size_t order = 0;
        for (Letter l : letters) order += (alphabet.paired_qv && l > n_primary) ? 2 : 1;
        if (order >= 3) {
          vanishes = true;
          break;
        }
      }
      if (letters.size() == 2 && letters[0] <= n_primary && letters[1] <= n_primary) {
        if (letters[0] != letters[1]) {
          if (alphabet.cross_brackets_vanish) {
            vanishes = true;
            break;
          }
        } else if (alphabet.paired_qv) {
          blocks.push_back(Block::single(letters[0] + n_primary));
          continue;
        }
      }
      blocks.push_back(block);
    }
    if (!vanishes) out.add(BracketWord(std::move(blocks)), coeff);
  }
  return out;
}

std::map<OperatorWord, Expansion> log_flow_expansion(const DriverAlphabet& alphabet, std::size_t order) {
  const auto terms = log_flow_terms(alphabet, order);
  const std::size_t letters = alphabet.size();
  std::map<OperatorWord, Expansion> out;
  std::size_t begin = 0;
  for (std::size_t n = 1; n <= order; ++n) {
    std::size_t end = begin;
    while (end < terms.size() && terms[end].n() == n) ++end;
    OperatorWord word(n, 1);
    while (true) {
      Expansion e;
      for (std::size_t t = begin; t < end; ++t) e.add(terms[t].instantiate(word), terms[t].coeff);
      e = apply_vanishing_rules(e, alphabet);
      if (!e.is_zero()) out.emplace(word, std::move(e));
      // odometer over [letters]^n
      std::size_t pos = n;
      while (pos > 0 && word[pos - 1] == letters) word[--pos] = 1;
      if (pos == 0) break;
      ++word[pos - 1];
    }
    begin = end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix expansions

Letter pair_letter(std::size_t dim, std::size_t row, std::size_t col) {
  if (row < 1 || row > dim || col < 1 || col > dim) throw std::out_of_range("matrix entry index out of range");
  return static_cast<Letter>((row - 1) * dim + col);
}

std::pair<std::size_t, std::size_t> pair_indices(std::size_t dim, Letter letter) {
  if (letter < 1 || letter > dim * dim) throw std::out_of_range("letter is not a pair letter for this dimension");
  return {(letter - 1) / dim + 1, (letter - 1) % dim + 1};
}

MatrixExpansion::MatrixExpansion(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw std::invalid_argument("matrix dimension must be positive");
}

MatrixExpansion MatrixExpansion::identity(std::size_t dim) {
  MatrixExpansion m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = Expansion::unit();
  return m;
}

MatrixExpansion MatrixExpansion::grade(std::size_t weight) const {
  MatrixExpansion out(dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i].grade(weight);
  return out;
}

MatrixExpansion MatrixExpansion::truncated(std::size_t max_weight) const {
  MatrixExpansion out(dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i].truncated(max_weight);
  return out;
}

std::size_t MatrixExpansion::max_weight() const noexcept {
  std::size_t m = 0;
  for (const auto& e : entries_) m = std::max(m, e.max_weight());
  return m;
}

bool MatrixExpansion::has_constant_term() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const Expansion& e) { return e.has_constant_term(); });
}

MatrixExpansion& MatrixExpansion::operator+=(const MatrixExpansion& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

MatrixExpansion& MatrixExpansion::operator-=(const MatrixExpansion& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

MatrixExpansion& MatrixExpansion::operator*=(const Rational& scale) {
  for (auto& e : entries_) e *= scale;
  return *this;
}

MatrixExpansion multiply(const MatrixExpansion& a, const MatrixExpansion& b, std::size_t max_weight) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
  const std::size_t d = a.dim();
  MatrixExpansion out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Expansion& cell = out.at(i, j);
      for (std::size_t l = 0; l < d; ++l) cell += qsh_truncated(a.at(i, l), b.at(l, j), max_weight);
    }
  }
  return out;
}

std::vector<BracketWord> contraction_words(std::size_t dim, std::size_t row, std::size_t col, std::size_t n) {
  if (row >= dim || col >= dim) throw std::out_of_range("matrix entry index out of range");
  if (n == 0) return row == col ? std::vector<BracketWord>{BracketWord{}} : std::vector<BracketWord>{};
  std::vector<BracketWord> out;
  // inner[t] is the contraction index between factor t and t+1 (0-based)
  std::vector<std::size_t> inner(n - 1, 0);
  while (true) {
    std::vector<Letter> letters(n);
    std::size_t from = row;
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t to = t + 1 < n ? inner[t] : col;
      letters[t] = pair_letter(dim, from + 1, to + 1);
      from = to;
    }
    out.push_back(BracketWord::from_letters(letters));
    std::size_t pos = inner.size();
    while (pos > 0 && inner[pos - 1] + 1 == dim) inner[--pos] = 0;
    if (pos == 0) break;
    ++inner[pos - 1];
  }
  return out;
}

MatrixExpansion matrix_ito_taylor(std::size_t dim, std::size_t order) {
  check_cap(order, weight_cap(), "Ito-Taylor order");
  MatrixExpansion out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t n = 0; n <= order; ++n) {
        for (const auto& w : contraction_words(dim, i, j, n)) out.at(i, j).add(w, 1);
      }
    }
  }
  return out;
}

MatrixExpansion matrix_log(std::size_t dim, std::size_t order) {
  MatrixExpansion out(dim);
  if (order == 0) return out;
  const SurjElement kernel = log_identity_closed_form(order);
  for (std::size_t n = 1; n <= order; ++n) {
    const SurjElement layer = kernel.grade(n);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        for (const auto& w : contraction_words(dim, i, j, n)) out.at(i, j) += apply_surjection(layer, w);
      }
    }
  }
  return out;
}

MatrixExpansion matrix_exp(const MatrixExpansion& me, std::size_t order) {
  check_cap(order, weight_cap(), "matrix exponential order");
  if (me.has_constant_term()) throw std::invalid_argument("matrix_exp requires an expansion without constant term");
  const MatrixExpansion base = me.truncated(order);
  MatrixExpansion result = MatrixExpansion::identity(me.dim());
  MatrixExpansion power = MatrixExpansion::identity(me.dim());
  for (std::size_t k = 1; k <= order; ++k) {
    power = multiply(power, base, order);
    power *= Rational(1, static_cast<unsigned long>(k));
    result += power;
  }
  return result;
}

}  // namespace itolog

#include "itolog/serialization.hpp"

#include <algorithm>
#include <cctype>

namespace itolog {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position) {}

// ---------------------------------------------------------------------------
// JSON

Json to_json(const Rational& q) {
  return Json{{"num", q.get_num().get_str(10)}, {"den", q.get_den().get_str(10)}};
}

Rational rational_from_json(const Json& j) {
  const std::string num = j.at("num").get<std::string>();
  const std::string den = j.at("den").get<std::string>();
  return parse_rational(num + "/" + den);
}

Json to_json(const BracketWord& w) {
  Json out = Json::array();
  for (const auto& b : w.blocks()) out.push_back(b.letters());
  return out;
}

BracketWord word_from_json(const Json& j) {
  std::vector<Block> blocks;
  for (const auto& b : j) blocks.emplace_back(b.get<std::vector<Letter>>());
  return BracketWord(std::move(blocks));
}

Json to_json(const Expansion& e) {
  Json terms = Json::array();
  for (const auto& [w, c] : e.terms()) terms.push_back({{"word", to_json(w)}, {"coeff", to_json(c)}});
  return Json{{"terms", std::move(terms)}};
}

Expansion expansion_from_json(const Json& j) {
  Expansion e;
  for (const auto& t : j.at("terms")) e.add(word_from_json(t.at("word")), rational_from_json(t.at("coeff")));
  return e;
}

Json to_json(const SurjElement& e) {
  Json terms = Json::array();
  for (const auto& [f, c] : e.terms()) terms.push_back({{"f", f.values()}, {"coeff", to_json(c)}});
  return Json{{"grade", e.max_grade()}, {"terms", std::move(terms)}};
}

SurjElement surj_element_from_json(const Json& j) {
  SurjElement e;
  for (const auto& t : j.at("terms")) {
    e.add(Surjection(t.at("f").get<std::vector<std::uint32_t>>()), rational_from_json(t.at("coeff")));
  }
  return e;
}

Json to_json(const LogTerm& t) {
  return Json{{"n", t.n()}, {"partition", t.partition.blocks()}, {"coeff", to_json(t.coeff)}};
}

LogTerm log_term_from_json(const Json& j) {
  OrderedSetPartition partition(j.at("partition").get<std::vector<std::vector<std::size_t>>>());
  if (partition.size() != j.at("n").get<std::size_t>()) {
    throw std::invalid_argument("log term partition does not cover [n]");
  }
  Surjection f = partition.to_surjection();
  return LogTerm{std::move(f), std::move(partition), rational_from_json(j.at("coeff"))};
}

Json to_json(const MatrixExpansion& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", m.dim()}, {"entries", std::move(rows)}};
}

MatrixExpansion matrix_expansion_from_json(const Json& j) {
  const auto dim = j.at("dim").get<std::size_t>();
  MatrixExpansion m(dim);
  const auto& rows = j.at("entries");
  if (rows.size() != dim) throw std::invalid_argument("matrix JSON has the wrong number of rows");
  for (std::size_t i = 0; i < dim; ++i) {
    if (rows[i].size() != dim) throw std::invalid_argument("matrix JSON row has the wrong length");
    for (std::size_t c = 0; c < dim; ++c) m.at(i, c) = expansion_from_json(rows[i][c]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Text

std::string to_text(const BracketWord& w) {
  std::string body;
  for (const auto& b : w.blocks()) {
    if (b.is_singleton() && b.letters().front() <= 9) {
      body += static_cast<char>('0' + b.letters().front());
      continue;
    }
    body += '[';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) body += ',';
      body += std::to_string(b.letters()[i]);
    }
    body += ']';
  }
  if (body.size() == 1) return "I_" + body;
  return "I_{" + body + "}";
}

std::string to_text(const Expansion& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (w.empty()) {
      out += to_string(magnitude);
      continue;
    }
    if (magnitude != 1) out += to_string(magnitude) + " ";
    out += to_text(w);
  }
  return out;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }
  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string digits() {
    std::string out;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      out += peek();
      ++pos_;
    }
    return out;
  }

  Letter letter() {
    const std::size_t start = pos_;
    const std::string d = digits();
    if (d.empty()) fail("expected a letter");
    if (d.size() > 9) throw ParseError("letter out of range", start);
    const auto v = std::stoul(d);
    if (v == 0) throw ParseError("letters are positive integers", start);
    return static_cast<Letter>(v);
  }

  Block bracket_block() {
    expect('[');
    std::vector<Letter> letters;
    skip_space();
    letters.push_back(letter());
    skip_space();
    while (accept(',')) {
      skip_space();
      letters.push_back(letter());
      skip_space();
    }
    expect(']');
    return Block(std::move(letters));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

BracketWord parse_text_word(Cursor& cur) {
  cur.expect('I');
  cur.expect('_');
  std::vector<Block> blocks;
  if (!cur.accept('{')) {
    if (!std::isdigit(static_cast<unsigned char>(cur.peek())) || cur.peek() == '0') cur.fail("expected a letter");
    blocks.push_back(Block::single(static_cast<Letter>(cur.peek() - '0')));
    cur.advance();
    return BracketWord(std::move(blocks));
  }
  while (!cur.accept('}')) {
    if (cur.done()) cur.fail("unterminated word");
    if (cur.peek() == '[') {
      blocks.push_back(cur.bracket_block());
    } else if (std::isdigit(static_cast<unsigned char>(cur.peek())) && cur.peek() != '0') {
      blocks.push_back(Block::single(static_cast<Letter>(cur.peek() - '0')));
      cur.advance();
    } else {
      cur.fail("unexpected character in word");
    }
  }
  return BracketWord(std::move(blocks));
}

}  // namespace

Expansion parse_expansion_text(std::string_view text) {
  Cursor cur(text);
  Expansion out;
  cur.skip_space();
  if (cur.accept('0')) {
    cur.skip_space();
    if (cur.done()) return out;
    cur.fail("trailing input after zero expansion");
  }
  bool first = true;
  while (true) {
    cur.skip_space();
    if (cur.done()) {
      if (first) cur.fail("empty expansion");
      break;
    }
    bool negative = false;
    if (cur.accept('-')) {
      negative = true;
    } else if (cur.accept('+')) {
      if (first) cur.fail("leading '+'");
    } else if (!first) {
      cur.fail("expected '+' or '-'");
    }
    first = false;
    cur.skip_space();
    Rational coeff(1);
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      const std::size_t start = cur.pos();
      std::string literal = cur.digits();
      if (cur.accept('/')) {
        const std::string den = cur.digits();
        if (den.empty()) cur.fail("expected a denominator");
        literal += "/" + den;
      }
      try {
        coeff = parse_rational(literal);
      } catch (const std::invalid_argument&) {
        throw ParseError("bad coefficient '" + literal + "'", start);
      }
      has_coeff = true;
      cur.skip_space();
    }
    BracketWord word;
    if (cur.peek() == 'I') {
      word = parse_text_word(cur);
    } else if (!has_coeff) {
      cur.fail("expected a coefficient or a word");
    }
    out.add(word, negative ? Rational(-coeff) : coeff);
  }
  return out;
}

std::string to_text(const SurjElement& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [f, c] : e.terms()) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (magnitude != 1) out += to_string(magnitude) + " ";
    const std::string s = to_string(f);
    out += (s.empty() || s.front() != '(') ? "(" + s + ")" : s;
  }
  return out;
}

BracketWord parse_word_literal(std::string_view text) {
  Cursor cur(text);
  std::vector<Block> blocks;
  if (cur.done()) return BracketWord{};
  while (true) {
    if (cur.peek() == '[') {
      blocks.push_back(cur.bracket_block());
    } else {
      blocks.push_back(Block::single(cur.letter()));
    }
    if (cur.done()) break;
    cur.expect('.');
  }
  return BracketWord(std::move(blocks));
}

}  // namespace itolog

#pragma once

// JSON and text forms of the symbolic values.
//
// Coefficients serialize as {"num": "-1", "den": "6"} with decimal strings.
// Words serialize as arrays of sorted letter arrays, e.g. [[1],[2,3]].
//
// Text form of a word: I_{2[1,3]}. A block is a single digit when it is one
// letter <= 9, otherwise a bracketed comma list ([1,3], [12]). A word of one
// single-digit block drops the braces (I_1); the unit word is written as a
// bare coefficient.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "itolog/ito_symbolic.hpp"
#include "itolog/qshuffle.hpp"
#include "itolog/rational.hpp"
#include "itolog/surjection.hpp"

namespace itolog {

using Json = nlohmann::json;

/// Parse failure with the 0-based offset of the offending character.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const BracketWord& w);
BracketWord word_from_json(const Json& j);

/// {"terms": [{"word": [[1],[2,3]], "coeff": {...}}, ...]}
Json to_json(const Expansion& e);
Expansion expansion_from_json(const Json& j);

/// {"grade": n, "terms": [{"f": [2,1,2], "coeff": {...}}, ...]}; "grade" is
/// the largest arity present (0 for the unit or zero element).
Json to_json(const SurjElement& e);
SurjElement surj_element_from_json(const Json& j);

/// {"n": 3, "partition": [[2],[1,3]], "coeff": {...}}
Json to_json(const LogTerm& t);
LogTerm log_term_from_json(const Json& j);

/// {"dim": 2, "entries": [[Expansion, ...], ...]} over row-major pair letters.
Json to_json(const MatrixExpansion& m);
MatrixExpansion matrix_expansion_from_json(const Json& j);

std::string to_text(const BracketWord& w);
/// "1/2 I_{12} - 1/2 I_{[1,2]}"; the zero expansion is "0".
std::string to_text(const Expansion& e);
/// Inverse of to_text(Expansion).
Expansion parse_expansion_text(std::string_view text);

/// "1/2 (12) - 1/2 (11)"; the unit surjection is "()".
std::string to_text(const SurjElement& e);

/// Command-line word literal: blocks separated by '.', a block is a positive
/// integer or a bracket list "[a,b,...]". The empty string is the unit word.
BracketWord parse_word_literal(std::string_view text);

}  // namespace itolog

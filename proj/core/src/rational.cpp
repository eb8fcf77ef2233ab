#include "itolog/rational.hpp"

#include <stdexcept>

namespace itolog {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw std::invalid_argument("malformed rational '" + s + "'");
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') {
        throw std::invalid_argument("malformed rational '" + s + "'");
      }
    }
  };
  std::string num = s.substr(0, slash);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  check_int(num);
  mpz_class n(num, 10);
  mpz_class d(1);
  if (slash != std::string::npos) {
    std::string den = s.substr(slash + 1);
    check_int(den);
    if (den[0] == '-' || den[0] == '+') throw std::invalid_argument("signed denominator in '" + s + "'");
    d = mpz_class(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace itolog

#include <gtest/gtest.h>

#include "itolog/config.hpp"
#include "itolog/rational.hpp"

using namespace itolog;

TEST(Rational, MakeCanonicalizes) {
  EXPECT_EQ(to_string(make_rational(2, -4)), "-1/2");
  EXPECT_EQ(to_string(make_rational(6, 3)), "2");
  EXPECT_EQ(to_string(make_rational(0, 5)), "0");
  EXPECT_THROW(make_rational(1, 0), std::invalid_argument);
}

TEST(Rational, ParseAcceptsIntegersAndFractions) {
  EXPECT_EQ(parse_rational("-1/6"), make_rational(-1, 6));
  EXPECT_EQ(parse_rational("+4/8"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_EQ(parse_rational("123456789012345678901234567890/3").get_num().get_str(),
            "41152263004115226300411522630");
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "1/", "/2", "1/0", "a", "1.5", "1/2/3", " 1"}) {
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, Binomial) {
  EXPECT_EQ(binomial(7, 3), 35);
  EXPECT_EQ(binomial(7, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(60, 30).get_str(), "118264581564861424");
}

TEST(Config, DefaultsAndScopedRestore) {
  EXPECT_EQ(weight_cap(), kDefaultWeightCap);
  EXPECT_EQ(grade_cap(), kDefaultGradeCap);
  {
    ScopedCaps caps(3, 2);
    EXPECT_EQ(weight_cap(), 3u);
    EXPECT_EQ(grade_cap(), 2u);
    EXPECT_THROW(check_cap(4, weight_cap(), "x"), CapExceeded);
    EXPECT_NO_THROW(check_cap(3, weight_cap(), "x"));
  }
  EXPECT_EQ(weight_cap(), kDefaultWeightCap);
  EXPECT_EQ(grade_cap(), kDefaultGradeCap);
}

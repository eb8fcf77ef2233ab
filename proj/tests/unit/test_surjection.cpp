#include <gtest/gtest.h>

#include "itolog/config.hpp"
#include "itolog/surjection.hpp"
#include "support.hpp"

using namespace itolog;

namespace {

SurjElement sum_of(std::initializer_list<Surjection> fs, const Rational& c = 1) {
  SurjElement e;
  for (const auto& f : fs) e.add(f, c);
  return e;
}

}  // namespace

TEST(Surjection, ValidatesImage) {
  EXPECT_NO_THROW(Surjection({2, 1, 2}));
  EXPECT_THROW(Surjection({1, 3}), std::invalid_argument);
  EXPECT_THROW(Surjection({0, 1}), std::invalid_argument);
  EXPECT_EQ(Surjection({2, 1, 2}).rank(), 2u);
  EXPECT_EQ(Surjection({2, 1, 2}).max_fiber(), 2u);
  EXPECT_TRUE(Surjection({2, 3, 1}).is_bijection());
  EXPECT_EQ(Surjection{}.arity(), 0u);
  EXPECT_EQ(Surjection::identity(3), Surjection({1, 2, 3}));
}

TEST(Surjection, PackMatchesOracle) {
  const std::vector<std::uint32_t> w{7, 3, 7, 10};
  EXPECT_EQ(pack(w).values(), oracle::pack(w));
  EXPECT_EQ(pack(w), Surjection({2, 1, 2, 3}));
  EXPECT_EQ(pack(std::span<const std::uint32_t>{}), Surjection{});
}

TEST(Surjection, TextRoundTrip) {
  EXPECT_EQ(to_string(Surjection({2, 1, 2})), "212");
  EXPECT_EQ(parse_surjection("212"), Surjection({2, 1, 2}));
  EXPECT_EQ(parse_surjection("(212)"), Surjection({2, 1, 2}));
  std::vector<std::uint32_t> big;
  for (std::uint32_t i = 10; i >= 1; --i) big.push_back(i);
  const Surjection f(big);
  EXPECT_EQ(to_string(f), "(10,9,8,7,6,5,4,3,2,1)");
  EXPECT_EQ(parse_surjection(to_string(f)), f);
  EXPECT_THROW(parse_surjection("13"), std::invalid_argument);
  EXPECT_THROW(parse_surjection("1x"), std::invalid_argument);
}

TEST(Enumerate, CountsAreFubiniNumbers) {
  for (unsigned n = 0; n <= 6; ++n) {
    const auto all = enumerate_surjections(n);
    EXPECT_EQ(all.size(), oracle::fubini(n).get_ui()) << n;
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    mpz_class factorial = 1;
    for (unsigned k = 1; k <= n; ++k) {
      factorial *= k;
      EXPECT_EQ(enumerate_surjections(n, k).size(), mpz_class(factorial * oracle::stirling2(n, k)).get_ui());
    }
  }
  EXPECT_THROW(enumerate_surjections(2, 3), std::invalid_argument);
  EXPECT_THROW(enumerate_surjections(2, 0), std::invalid_argument);
}

TEST(Enumerate, BoundedFibers) {
  for (unsigned n = 1; n <= 6; ++n) {
    std::size_t total = 0;
    for (unsigned k = 1; k <= n; ++k) {
      for (const auto& f : enumerate_surjections_bounded(n, k, 2)) {
        EXPECT_LE(f.max_fiber(), 2u);
        ++total;
      }
    }
    EXPECT_EQ(total, oracle::fubini_bounded2(n).get_ui()) << n;
  }
}

TEST(Diamond, SmallestProduct) {
  // (1) <> (1) = (12) + (21) + (11)
  EXPECT_EQ(diamond(Surjection({1}), Surjection({1})), sum_of({{1, 2}, {2, 1}, {1, 1}}));
}

TEST(Diamond, MatchesFunctionOracle) {
  std::vector<Surjection> fs;
  for (unsigned n = 0; n <= 3; ++n) {
    for (const auto& f : enumerate_surjections(n)) fs.push_back(f);
  }
  for (const auto& f : fs) {
    for (const auto& g : fs) {
      if (f.arity() + g.arity() > 5) continue;
      SurjElement expected;
      for (const auto& [h, count] : oracle::diamond_by_functions(f.values(), g.values())) {
        expected.add(Surjection(h), count);
      }
      EXPECT_EQ(diamond(f, g), expected) << to_string(f) << " <> " << to_string(g);
      EXPECT_EQ(diamond(f, g, DiamondMethod::kBruteForce), expected);
    }
  }
}

TEST(Diamond, UnitAndAssociativity) {
  const auto fs = enumerate_surjections(2);
  for (const auto& f : fs) {
    EXPECT_EQ(diamond(Surjection{}, f), SurjElement(f));
    for (const auto& g : fs) {
      for (const auto& h : enumerate_surjections(1)) {
        EXPECT_EQ(diamond(diamond(f, g), SurjElement(h)), diamond(SurjElement(f), diamond(g, h)));
      }
    }
  }
}

TEST(Diamond, GradeBoundSkipsPairs) {
  const SurjElement a = sum_of({{1}, {1, 2}});
  EXPECT_EQ(diamond(a, a, 3), diamond(a, a).truncated(3));
}

TEST(Descents, SetAndCount) {
  EXPECT_EQ(descent_set(Surjection({2, 1, 2})), (PositionSet{1}));
  EXPECT_EQ(descent_set(Surjection({1, 1, 2})), (PositionSet{1}));
  EXPECT_EQ(descent_set(Surjection({3, 2, 1})), (PositionSet{1, 2}));
  EXPECT_EQ(descent_count(Surjection({1, 2, 3})), 0u);
}

TEST(Descents, ClassesPartitionSj) {
  for (std::size_t n = 1; n <= 5; ++n) {
    SurjElement total;
    const std::size_t subsets = std::size_t{1} << (n - 1);
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      PositionSet I;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        if (mask >> p & 1) I.insert(p + 1);
      }
      const auto d = descent_class(n, I);
      for (const auto& [f, c] : d.terms()) EXPECT_EQ(descent_set(f), I);
      total += d;
    }
    EXPECT_EQ(total.size(), oracle::fubini(static_cast<unsigned>(n)).get_ui());
  }
}

TEST(Ncsf, IotaOfSingleBlockIsIdentity) {
  // D_{subseteq {}} in Sj_n is the lone surjection without descents
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(iota(Composition({n})), SurjElement(Surjection::identity(n)));
}

TEST(Ncsf, MorphismLemma) {
  const std::vector<Composition> comps = {{1}, {2}, {1, 1}, {3}, {1, 2}, {2, 1}, {1, 1, 1}};
  for (const auto& a : comps) {
    for (const auto& b : comps) {
      if (a.total() + b.total() > 6) continue;
      EXPECT_EQ(diamond(iota(a), iota(b)), iota(a * b));
    }
  }
  EXPECT_EQ(Composition({1, 2}).partial_sums(), (PositionSet{1}));
  EXPECT_THROW(Composition({1, 0}), std::invalid_argument);
}

TEST(Log, CoefficientMatchesOracle) {
  for (unsigned n = 1; n <= 8; ++n) {
    for (unsigned d = 0; d < n; ++d) EXPECT_EQ(bch_coefficient(n, d), oracle::log_coefficient(n, d));
  }
}

TEST(Log, SeriesEqualsClosedForms) {
  for (std::size_t N = 1; N <= 4; ++N) {
    const auto series = log_identity_series(N);
    EXPECT_EQ(series, log_identity_closed_form(N, ClosedForm::kDescentClasses)) << N;
    EXPECT_EQ(series, log_identity_closed_form(N, ClosedForm::kContainment)) << N;
  }
}

TEST(Log, GradeTwoAndThreeCoefficients) {
  const auto log = log_identity_closed_form(3);
  const Rational half = make_rational(1, 2);
  const Rational sixth = make_rational(1, 6);
  const Rational third = make_rational(1, 3);
  EXPECT_EQ(log.grade(1), SurjElement(Surjection({1})));
  EXPECT_EQ(log.grade(2), sum_of({{1, 2}}, half) + sum_of({{2, 1}, {1, 1}}, -half));
  SurjElement three = sum_of({{1, 2, 3}}, third);
  three += sum_of({{2, 1, 3}, {3, 1, 2}, {1, 1, 2}, {2, 1, 2}}, -sixth);
  three += sum_of({{1, 3, 2}, {2, 3, 1}, {1, 2, 2}, {1, 2, 1}}, -sixth);
  three += sum_of({{3, 2, 1}, {2, 1, 1}, {1, 1, 1}, {2, 2, 1}}, third);
  EXPECT_EQ(log.grade(3), three);
}

TEST(Log, ExpOfLogIsIdentitySeries) {
  for (std::size_t N = 1; N <= 5; ++N) {
    SurjElement identity = SurjElement::unit();
    for (std::size_t n = 1; n <= N; ++n) identity.add(Surjection::identity(n), 1);
    EXPECT_EQ(exp_element(log_identity_closed_form(N), N), identity);
  }
  EXPECT_THROW(exp_element(SurjElement::unit(), 2), std::invalid_argument);
}

TEST(Log, GradeCap) {
  EXPECT_THROW(log_identity_series(kDefaultGradeCap + 1), CapExceeded);
  EXPECT_THROW(log_identity_series(0), std::invalid_argument);
}

TEST(Log, StrichartzRestrictionLivesOnPermutations) {
  const auto s = strichartz_restriction(4);
  std::size_t count = 0;
  for (const auto& [f, c] : s.terms()) {
    EXPECT_TRUE(f.is_bijection());
    EXPECT_EQ(c, oracle::log_coefficient(static_cast<unsigned>(f.arity()), static_cast<unsigned>(descent_count(f))));
    ++count;
  }
  EXPECT_EQ(count, 1u + 2u + 6u + 24u);
}

TEST(ApplySurjection, WorkedCase) {
  const BracketWord w = BracketWord::from_letters(std::vector<Letter>{1, 2, 3});
  EXPECT_EQ(apply_surjection(Surjection({2, 1, 2}), w), BracketWord({Block({2}), Block({1, 3})}));
  EXPECT_THROW(apply_surjection(Surjection({1, 2}), w), std::invalid_argument);
  const SurjElement e = sum_of({{1, 2, 3}, {3, 2, 1}});
  EXPECT_EQ(apply_surjection(e, w).size(), 2u);
}

TEST(OrderedSetPartition, RoundTripsThroughSurjection) {
  for (const auto& f : enumerate_surjections(4)) {
    const auto p = OrderedSetPartition::of(f);
    EXPECT_EQ(p.to_surjection(), f);
    EXPECT_EQ(p.size(), 4u);
    EXPECT_EQ(p.max_block(), f.max_fiber());
  }
  EXPECT_EQ(OrderedSetPartition::of(Surjection({2, 1, 2})).blocks(),
            (std::vector<std::vector<std::size_t>>{{2}, {1, 3}}));
  EXPECT_THROW(OrderedSetPartition({{1}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(OrderedSetPartition({{1}, {3}}), std::invalid_argument);
  EXPECT_THROW(OrderedSetPartition({{1}, {}}), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <random>

#include "schreier/ordinal.hpp"
#include "schreier/selfcheck.hpp"

using namespace schreier;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

TEST(Ordinal, ParsePrintRoundTrip) {
  for (auto lit : {"0", "1", "7", "w", "w + 1", "w*2", "w^2", "w^2*3 + w*2 + 5", "w^w", "w^{w+1}*2 + w^3",
                   "w^{w^w}"}) {
    Ordinal x = O(lit);
    EXPECT_EQ(parse_ordinal(to_string(x)), x) << lit;
  }
  EXPECT_EQ(to_string(O("w^2*3 + w*2 + 5")), "w^2*3 + w*2 + 5");
  EXPECT_EQ(to_string(O("w*2+2")), "w*2 + 2");
}

TEST(Ordinal, ParseNormalizesSums) {
  EXPECT_EQ(O("1 + w"), O("w"));
  EXPECT_EQ(O("w + w"), O("w*2"));
  EXPECT_EQ(O("w + w^2"), O("w^2"));
  EXPECT_EQ(O("3w"), O("w*3"));
}

TEST(Ordinal, ParseRejectsGarbage) {
  for (auto bad : {"", "w^", "x", "w*", "w^{w", "w +", "-1"})
    EXPECT_THROW(parse_ordinal(bad), std::invalid_argument) << bad;
}

TEST(Ordinal, Compare) {
  EXPECT_EQ(compare(O("w"), O("w")), std::strong_ordering::equal);
  EXPECT_EQ(compare(O("w*2"), O("w+5")), std::strong_ordering::greater);
  EXPECT_EQ(compare(O("w^w"), O("w^3*9")), std::strong_ordering::greater);
  EXPECT_LT(O("1000"), O("w"));
  EXPECT_LT(O("w^2*3 + w"), O("w^2*3 + w + 1"));
}

// Ordinals below w*2 are exactly 0, 1, ..., w, w+1, ...: their order is the
// order of the code n for n and 1000 + n for w + n.
TEST(Ordinal, CompareBelowOmegaTimesTwoMatchesCodes) {
  std::vector<std::pair<Ordinal, int>> xs;
  for (int n = 0; n < 20; ++n) {
    xs.emplace_back(Ordinal(n), n);
    xs.emplace_back(add(Ordinal::omega(), Ordinal(n)), 1000 + n);
  }
  for (auto& [x, cx] : xs)
    for (auto& [y, cy] : xs) EXPECT_EQ(compare(x, y), cx <=> cy);
}

TEST(Ordinal, Add) {
  EXPECT_EQ(add(O("1"), O("w")), O("w"));
  EXPECT_EQ(add(O("w"), O("1")), O("w+1"));
  EXPECT_EQ(add(O("w^2*3 + w*2"), O("w^2")), O("w^2*4"));
  EXPECT_EQ(add(O("w+3"), O("0")), O("w+3"));
}

TEST(Ordinal, AddMatchesTermRewritingOracle) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    Ordinal x = selfcheck::detail::random_ordinal(rng, 1), y = selfcheck::detail::random_ordinal(rng, 1);
    EXPECT_EQ(add(x, y), selfcheck::oracle::add(x, y)) << to_string(x) << " + " << to_string(y);
  }
}

TEST(Ordinal, AddIsAssociativeAndMonotoneOnTheRight) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    Ordinal x = selfcheck::detail::random_ordinal(rng, 1), y = selfcheck::detail::random_ordinal(rng, 1),
            z = selfcheck::detail::random_ordinal(rng, 1);
    EXPECT_EQ(add(add(x, y), z), add(x, add(y, z)));
    if (y < z) EXPECT_LT(add(x, y), add(x, z));
    EXPECT_GE(add(x, y), x);
  }
}

TEST(Ordinal, PowersAndMultiples) {
  EXPECT_EQ(omega_power(O("0")), O("1"));
  EXPECT_EQ(omega_power(O("1")), O("w"));
  EXPECT_EQ(nat_multiple(O("w"), 2), O("w*2"));
  EXPECT_EQ(nat_multiple(O("w^2 + w"), 3), O("w^2*3 + w"));
  EXPECT_THROW(nat_multiple(O("w"), 0), std::invalid_argument);
}

TEST(Ordinal, Classify) {
  EXPECT_EQ(classify(O("0")).kind, OrdinalKind::kZero);
  auto c = classify(O("w+3"));
  EXPECT_EQ(c.kind, OrdinalKind::kSuccessor);
  EXPECT_EQ(c.predecessor, O("w+2"));
  EXPECT_EQ(classify(O("w^2")).kind, OrdinalKind::kLimit);
  EXPECT_EQ(classify(O("1")).predecessor, O("0"));
}

TEST(Ordinal, FundamentalExamples) {
  EXPECT_EQ(fundamental(O("w"), 5), O("4"));
  EXPECT_EQ(fundamental(O("w"), 1), O("0"));
  EXPECT_EQ(fundamental(O("w^2"), 3), O("w*2 + 2"));
  EXPECT_EQ(fundamental(O("w*2"), 4), O("w + 3"));
  EXPECT_EQ(fundamental(O("w^w"), 3), O("w*2 + 2"));
  EXPECT_EQ(fundamental(O("w^{w+1}"), 2), O("w^w + 1"));
  EXPECT_EQ(fundamental(O("w^3 + w"), 2), O("w^3 + 1"));
}

TEST(Ordinal, FundamentalRejectsNonLimits) {
  EXPECT_THROW(fundamental(O("0"), 1), std::invalid_argument);
  EXPECT_THROW(fundamental(O("w+1"), 1), std::invalid_argument);
  EXPECT_THROW(fundamental(O("w"), 0), std::invalid_argument);
}

TEST(Ordinal, FundamentalSequencesIncreaseBelowTheLimit) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Ordinal x = selfcheck::detail::random_limit(rng, 0, 3);
    Ordinal prev;
    for (std::uint64_t n = 1; n <= 8; ++n) {
      Ordinal xn = fundamental(x, n);
      EXPECT_LT(xn, x);
      EXPECT_GE(xn, prev) << to_string(x) << " at " << n;
      prev = xn;
    }
  }
}

// Cofinality: the sequence passes any given ordinal below the limit.
TEST(Ordinal, FundamentalSequencesAreCofinal) {
  EXPECT_GT(fundamental(O("w^2"), 12), O("w*10 + 5"));
  EXPECT_GT(fundamental(O("w^w"), 9), O("w^4*7"));
  EXPECT_GT(fundamental(O("w*3"), 40), O("w*2 + 30"));
}

TEST(Ordinal, DescendStepsDownToZero) {
  EXPECT_EQ(descend(O("w+3"), 7), O("w+2"));
  EXPECT_EQ(descend(O("w"), 7), O("6"));
  EXPECT_THROW(descend(O("0"), 1), std::invalid_argument);
  Ordinal x = O("w^2");
  int steps = 0;
  while (!x.is_zero()) {
    x = descend(x, 3);
    ++steps;
  }
  EXPECT_EQ(steps, 9);  // w^2, w*2+2, w*2+1, w*2, w+2, w+1, w, 2, 1, 0
}

}  // namespace

#include <gtest/gtest.h>

#include <random>

#include "schreier/selfcheck.hpp"
#include "schreier/uniform_system.hpp"

using namespace schreier;
namespace oracle = schreier::selfcheck::oracle;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

// Same family without the automaton: enumeration falls back to the
// predicate DFS pruned by contains_prefix.
Family predicate_only(Family f) {
  f.automaton = nullptr;
  return f;
}

std::vector<FiniteSet> all_subsets(Element hi) {
  std::vector<FiniteSet> out;
  for (std::uint32_t mask = 0; mask < (1u << hi); ++mask) out.emplace_back(oracle::subset_of(mask));
  return out;
}

TEST(SystemA, MembershipExamples) {
  EXPECT_TRUE(member_A(O("w"), FiniteSet{3, 5, 9}));
  EXPECT_FALSE(member_A(O("w"), FiniteSet{1, 2}));
  EXPECT_TRUE(member_A(O("w"), FiniteSet{1}));
  EXPECT_TRUE(member_A(O("0"), FiniteSet{}));
  EXPECT_FALSE(member_A(O("0"), FiniteSet{1}));
  EXPECT_FALSE(member_A(O("3"), FiniteSet{}));
  EXPECT_TRUE(member_A(O("w+1"), FiniteSet{5, 6, 7, 8, 9, 10, 11}));  // 5 then A_w at 6
  EXPECT_FALSE(member_A(O("w+1"), FiniteSet{5, 6, 7, 8, 9}));
  EXPECT_FALSE(member_A(O("w+1"), FiniteSet{5, 6}));
}

TEST(SystemA, InitialSegmentClosure) {
  EXPECT_TRUE(member_A_star(O("w"), FiniteSet{4, 5, 6}));
  EXPECT_FALSE(member_A_star(O("w"), FiniteSet{2, 3, 4}));
  EXPECT_TRUE(member_A_star(O("w"), FiniteSet{}));
  EXPECT_TRUE(member_A_star(O("2"), FiniteSet{1, 9}));
}

TEST(SystemA, EnumerationOnSmallWindow) {
  auto got = enumerate(make_family(FamilySpec::A(O("w"))), Window(1, 4));
  EXPECT_EQ(got, (std::vector<FiniteSet>{{1}, {2, 3}, {2, 4}}));
}

TEST(SystemA, AgreesWithBlockOracle) {
  for (auto lit : {"0", "1", "3", "w", "w+2", "w*2", "w^2", "w^2+w", "w^3", "w^w"}) {
    Ordinal xi = O(lit);
    for (const auto& s : all_subsets(12)) {
      EXPECT_EQ(member_A(xi, s), oracle::member_A(xi, s)) << lit << " " << to_string(s);
      bool star = oracle::member_A(xi, s) || oracle::proper_prefix(xi, s);
      EXPECT_EQ(member_A_star(xi, s), star) << lit << " " << to_string(s);
    }
  }
}

TEST(SystemA, AutomatonAndPredicateEnumerationsAgree) {
  for (auto lit : {"2", "w", "w+1", "w*2", "w^2"}) {
    Family f = make_family(FamilySpec::A(O(lit)));
    EXPECT_EQ(enumerate(f, Window(1, 16)), enumerate(predicate_only(f), Window(1, 16))) << lit;
  }
}

TEST(SystemA, SubsetClosureMatchesBruteForce) {
  for (auto lit : {"2", "w", "w+1", "w*2", "w^2"}) {
    Ordinal xi = O(lit);
    // Every subset of a member inside [1,16] is in the closure; check the
    // ones inside [1,10].
    std::set<FiniteSet> below;
    for_each_member(make_family(FamilySpec::A(xi)), Window(1, 16), [&](SetView m) {
      std::vector<Element> in;
      for (Element x : m)
        if (x <= 10) in.push_back(x);
      for (std::uint32_t mask = 0; mask < (1u << in.size()); ++mask) {
        std::vector<Element> sub;
        for (std::size_t i = 0; i < in.size(); ++i)
          if (mask & (1u << i)) sub.push_back(in[i]);
        below.emplace(std::move(sub));
      }
      return true;
    });
    for (const auto& s : all_subsets(10))
      if (below.count(s)) EXPECT_TRUE(member_A_down(xi, s)) << lit << " " << to_string(s);
  }
  // Closed forms: (A_k)_* is |s| <= k, and (A_w)_* is |s| <= min s since
  // the members of A_w are the sets with |t| = min t.
  for (const auto& s : all_subsets(12)) {
    EXPECT_EQ(member_A_down(O("3"), s), s.size() <= 3);
    bool w_down = s.empty() || s.size() <= s.min();
    EXPECT_EQ(member_A_down(O("w"), s), w_down) << to_string(s);
  }
}

TEST(SchreierB, IsAAtOmegaPower) {
  EXPECT_TRUE(member_B(O("1"), FiniteSet{3, 4, 8}));  // |s| = min s
  EXPECT_FALSE(member_B(O("1"), FiniteSet{3, 4}));
  EXPECT_TRUE(member_B(O("0"), FiniteSet{6}));
  for (const auto& s : all_subsets(10)) EXPECT_EQ(member_B(O("1"), s), !s.empty() && s.size() == s.min());
}

TEST(SchreierF, Membership) {
  EXPECT_TRUE(member_F(O("1"), FiniteSet{3, 4, 5}));
  EXPECT_FALSE(member_F(O("1"), FiniteSet{2, 4, 5}));
  EXPECT_FALSE(member_F(O("1"), FiniteSet{}));
  EXPECT_TRUE(member_F(O("0"), FiniteSet{7}));
  for (const auto& s : all_subsets(11)) {
    EXPECT_EQ(member_F(O("1"), s), !s.empty() && s.size() <= s.min());
    for (auto lit : {"2", "3", "w", "w+1"})
      EXPECT_EQ(member_F(O(lit), s), oracle::member_F(O(lit), s)) << lit << " " << to_string(s);
  }
}

TEST(SchreierF, FamilyIsHereditaryAndContainsEmpty) {
  Family f = make_family(FamilySpec::F(O("2")));
  EXPECT_TRUE(f.hereditary);
  EXPECT_TRUE(f.contains(FiniteSet{}));
  EXPECT_FALSE(hereditary_violation(f, FiniteSet{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}));
}

TEST(SchreierF, ContainsInitialSegmentClosureOfB) {
  // (B_a)^* lies in F_a, checked on a window.
  for (auto lit : {"1", "2"}) {
    Family star = make_family(FamilySpec::B(O(lit)));
    for (const auto& s : star_closure(star, Window(1, 14)))
      if (!s.empty()) EXPECT_TRUE(member_F(O(lit), s)) << lit << " " << to_string(s);
  }
}

TEST(Examples, ClosedForms) {
  Family L = make_family(FamilySpec::example_L()), R = make_family(FamilySpec::example_R());
  for (const auto& s : all_subsets(12)) {
    bool ne = !s.empty();
    EXPECT_EQ(L.contains(s), ne && s.size() == 2 * s.min() + 1) << to_string(s);
    EXPECT_EQ(R.contains(s), ne && s.size() == s.min()) << to_string(s);
    EXPECT_EQ(L.contains_prefix(s), !ne || s.size() <= 2 * s.min() + 1);
    EXPECT_EQ(R.contains_subset(s), !ne || s.size() <= s.min());
    EXPECT_EQ(L.contains_subset(s), !ne || s.size() <= 2 * s.min() + 1);
  }
}

TEST(Examples, NonSpernerFamily) {
  Family f = make_family(FamilySpec::example_112());
  EXPECT_TRUE(f.contains(FiniteSet{1, 2, 3, 4, 5, 6}));
  EXPECT_TRUE(f.contains(FiniteSet{2, 3, 4, 5}));
  EXPECT_TRUE(check_thin(f, Window(1, 12)).ok);
  EXPECT_FALSE(check_sperner(f, Window(1, 12)).ok);
  EXPECT_EQ(uniformity(FamilySpec::example_112()), O("w*2"));
}

TEST(Literals, RoundTrip) {
  for (auto lit : {"A:w^2", "B:1", "F:w + 1", "exL", "exR", "ex112", "all", "down:A:3", "down:exL"})
    EXPECT_EQ(to_string(parse_family(lit)), lit);
  for (auto bad : {"", "A:", "C:3", "A:x", "down:", "exM"})
    EXPECT_THROW(parse_family(bad), std::invalid_argument) << bad;
}

TEST(Sections, SystemLawOnSmallWindow) {
  for (auto lit : {"3", "w", "w*2", "w^2"}) {
    Ordinal xi = O(lit);
    for (Element m = 1; m <= 6; ++m) {
      auto sec = section(FamilySpec::A(xi), m, Window(1, 16));
      std::vector<FiniteSet> want;
      for (const auto& s : enumerate(predicate_only(make_family(FamilySpec::A(descend(xi, m)))),
                                     Window(m + 1, 16)))
        want.push_back(s);
      EXPECT_EQ(sec, want) << lit << " at " << m;
    }
  }
}

TEST(Sections, ExampleFamilies) {
  auto five = section(FamilySpec::example_112(), 1, Window(1, 8));
  EXPECT_EQ(five.size(), 21u);  // C(7,5)
  for (const auto& s : five) EXPECT_EQ(s.size(), 5u);
  auto r = section(FamilySpec::example_R(), 3, Window(1, 6));
  EXPECT_EQ(r, (std::vector<FiniteSet>{{4, 5}, {4, 6}, {5, 6}}));
  EXPECT_TRUE(section(FamilySpec::A(O("0")), 1, Window(1, 5)).empty());
}

TEST(Spreading, ImageUnderOrderIsomorphism) {
  FiniteSet L{3, 4, 5, 6, 7, 8};
  EXPECT_EQ(spread(FiniteSet{1, 3}, L), (FiniteSet{3, 5}));
  EXPECT_THROW(spread(FiniteSet{7}, L), std::out_of_range);
  auto img = spread_F(O("1"), L, Window(1, 8));
  // One image per index set in F_1 on 1..6.
  for (const auto& s : img) EXPECT_TRUE(L.contains(s.min()));
  EXPECT_EQ(img.front(), (FiniteSet{3}));
  std::size_t want = 0;
  for (const auto& idx : all_subsets(6))
    if (member_F(O("1"), idx)) ++want;
  EXPECT_EQ(img.size(), want);
}

TEST(OrdinalTable, StepsMatchDescend) {
  auto& t = OrdinalTable::local();
  for (auto lit : {"w^2", "w*3+1", "w^w"}) {
    auto id = t.intern(O(lit));
    for (Element m : {1u, 5u, 127u, 128u, 500u}) EXPECT_EQ(t.get(t.step(id, m)), descend(O(lit), m));
  }
  EXPECT_EQ(t.intern(O("0")), OrdinalTable::kZero);
}

}  // namespace

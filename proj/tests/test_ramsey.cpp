#include <gtest/gtest.h>

#include "schreier/ramsey.hpp"

using namespace schreier;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

FiniteSet range(Element lo, Element hi) {
  std::vector<Element> v;
  for (Element x = lo; x <= hi; ++x) v.push_back(x);
  return FiniteSet(v);
}

void expect_valid(const Certificate& c) {
  CheckResult r = check_certificate(c);
  EXPECT_TRUE(r.ok()) << to_string(c.kind) << ": " << r.reason;
  EXPECT_EQ(r.checked, c.checked);
}

TEST(Colorings, Registry) {
  EXPECT_EQ(make_coloring("parity-sum").color(FiniteSet{1, 3}), 1u);
  EXPECT_EQ(make_coloring("parity-sum").color(FiniteSet{1, 2}), 2u);
  EXPECT_EQ(make_coloring("span-threshold").color(FiniteSet{1, 9}), 1u);
  EXPECT_EQ(make_coloring("span-threshold").color(FiniteSet{1, 2}), 2u);
  Coloring h = make_coloring("hash:7:3");
  EXPECT_EQ(h.colors, 3u);
  EXPECT_EQ(h.name, "hash:7:3");
  for (Element x = 1; x < 50; ++x) {
    auto c = h.color(FiniteSet{x});
    EXPECT_GE(c, 1u);
    EXPECT_LE(c, 3u);
    EXPECT_EQ(c, make_coloring("hash:7:3").color(FiniteSet{x}));
  }
  for (auto bad : {"nope", "hash:", "hash:x", "hash:1:0"})
    EXPECT_THROW(make_coloring(bad), std::invalid_argument) << bad;
}

TEST(Colorings, ExternalProcess) {
  Coloring c = make_coloring("external:while read s; do case $s in *9*) echo 2;; *) echo 1;; esac; done");
  EXPECT_EQ(c.color(FiniteSet{1, 2}), 1u);
  EXPECT_EQ(c.color(FiniteSet{1, 9}), 2u);
  EXPECT_EQ(c.color(FiniteSet{1, 2}), 1u);
  Coloring bad = make_coloring("external:while read s; do echo 7; done");
  EXPECT_THROW(bad.color(FiniteSet{1}), std::runtime_error);
}

TEST(Homogenize, ParityPairs) {
  auto cert = homogenize(FamilySpec::A(O("2")), parity_sum_coloring(), Window(1, 20), 4);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->witness, (FiniteSet{1, 3, 5, 7}));
  EXPECT_EQ(cert->color, 1u);
  expect_valid(*cert);
  for (Element a : cert->witness)
    for (Element b : cert->witness)
      if (a < b) EXPECT_EQ((a + b) % 2, 0u);
}

// Certificates re-derive the coloring from its literal, so ad hoc colorings
// go through an external process.
Coloring thirds() {
  return make_coloring(R"(external:while read s; do n=${s#?}; n=${n%?}; [ $((n % 3)) -eq 0 ] && echo 2 || echo 1; done)");
}

TEST(Homogenize, SingletonsTakeTheMajorityClass) {
  Coloring c = thirds();
  auto cert = homogenize(FamilySpec::A(O("1")), c, Window(1, 9), 4);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->color, 1u);
  for (Element x : cert->witness) EXPECT_NE(x % 3, 0u);
}

TEST(Homogenize, OmegaUniformSpanThreshold) {
  auto cert = homogenize(FamilySpec::A(O("w")), span_threshold_coloring(), Window(1, 30), 5);
  ASSERT_TRUE(cert);
  expect_valid(*cert);
}

TEST(Homogenize, ReportsExhaustion) {
  Coloring c{"first", 2, [](SetView s) { return s[0] == 1 ? 1u : 2u; }};
  EXPECT_FALSE(homogenize(FamilySpec::A(O("2")), c, Window(1, 3), 3));
  EXPECT_THROW(homogenize(FamilySpec::A(O("2")), c, Window(1, 3), 0), std::invalid_argument);
}

TEST(Stream, EvensUnderParity) {
  auto r = homogenize_stream(FamilySpec::A(O("2")), parity_sum_coloring(),
                             [](std::size_t i) { return static_cast<Element>(2 * (i + 1)); });
  ASSERT_EQ(r.status, StreamStatus::kComplete);
  EXPECT_EQ(r.color, 1u);
  EXPECT_FALSE(r.prefix.empty());
  for (Element x : r.prefix) EXPECT_EQ(x % 2, 0u);
  ASSERT_TRUE(r.certificate);
  expect_valid(*r.certificate);
}

TEST(Stream, SingletonsPickTheMajorityColor) {
  Coloring c = thirds();
  auto r = homogenize_stream(FamilySpec::A(O("1")), c, [](std::size_t i) { return Element(i + 1); });
  EXPECT_EQ(r.color, 1u);
  for (Element x : r.prefix) EXPECT_NE(x % 3, 0u);
}

TEST(Stream, Budgets) {
  StreamBudget none;
  none.max_prefix = 0;
  auto r = homogenize_stream(FamilySpec::A(O("2")), parity_sum_coloring(),
                             [](std::size_t i) { return Element(i + 1); }, majority_strategy, none);
  EXPECT_EQ(r.status, StreamStatus::kComplete);
  EXPECT_TRUE(r.prefix.empty());
  ASSERT_TRUE(r.certificate);
  expect_valid(*r.certificate);

  StreamBudget tiny;
  tiny.max_nodes = 3;
  auto t = homogenize_stream(FamilySpec::A(O("w")), parity_sum_coloring(),
                             [](std::size_t i) { return Element(i + 1); }, majority_strategy, tiny);
  EXPECT_EQ(t.status, StreamStatus::kBudgetExhausted);
  EXPECT_FALSE(t.certificate);
}

TEST(Sperner, RefinesTheNonSpernerFamily) {
  auto cert = sperner_refine(FamilySpec::example_112(), Window(1, 25), 6);
  ASSERT_TRUE(cert);
  expect_valid(*cert);
  EXPECT_TRUE(check_sperner(make_family(FamilySpec::example_112()), Window::over(cert->witness)).ok);
  auto any = sperner_refine(FamilySpec::A(O("3")), Window(1, 10), 6);
  ASSERT_TRUE(any);
  EXPECT_EQ(any->witness, range(1, 6));
}

TEST(Dichotomy, BoundaryExamplesOnSmallWindows) {
  auto b = hereditary_dichotomy(FamilySpec::F(O("1")), FamilySpec::example_L(), Window(1, 20), 20);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].kind, CertificateKind::kDichotomyBranchB);
  expect_valid(b[0]);
  auto a = hereditary_dichotomy(FamilySpec::down(FamilySpec::example_L()), FamilySpec::example_R(),
                                Window(1, 20), 20);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].kind, CertificateKind::kDichotomyBranchA);
  expect_valid(a[0]);
}

TEST(Dichotomy, EverythingGivesBranchA) {
  auto c = hereditary_dichotomy(FamilySpec::all(), FamilySpec::A(O("w")), Window(1, 12), 8);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c[0].kind, CertificateKind::kDichotomyBranchA);
  EXPECT_EQ(c[0].witness, range(1, 8));
}

TEST(Dichotomy, RejectsNonHereditaryFamilies) {
  EXPECT_THROW(hereditary_dichotomy(FamilySpec::A(O("2")), FamilySpec::A(O("w")), Window(1, 10), 4),
               std::invalid_argument);
}

TEST(Separation, PairsBelowOmega) {
  auto c = rank_separation(O("2"), O("w"), Window(1, 20), 16);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->witness, range(3, 18));
  expect_valid(*c);
  auto s = rank_separation(O("1"), O("2"), Window(1, 10), 10);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->witness, range(1, 10));
  EXPECT_THROW(rank_separation(O("w"), O("2"), Window(1, 10), 4), std::invalid_argument);
  EXPECT_THROW(rank_separation(O("w"), O("w"), Window(1, 10), 4), std::invalid_argument);
}

TEST(Separation, OmegaBelowOmegaTimesTwo) {
  auto c = rank_separation(O("w"), O("w*2"), Window(1, 40), 10);
  ASSERT_TRUE(c);
  expect_valid(*c);
}

TEST(Chains, Examples) {
  auto f1 = detect_chain(FamilySpec::F(O("1")), Window(1, 20), 5);
  ASSERT_TRUE(f1);
  EXPECT_EQ(f1->witness, range(5, 9));
  expect_valid(*f1);
  EXPECT_FALSE(detect_chain(FamilySpec::down(FamilySpec::A(O("3"))), Window(1, 20), 5));
  auto all = detect_chain(FamilySpec::all(), Window(1, 20), 7);
  ASSERT_TRUE(all);
  EXPECT_EQ(all->witness, range(1, 7));
}

TEST(Transfer, ShiftByTwo) {
  for (auto lit : {"0", "1"}) {
    auto c = schreier_transfer(O(lit), Window(1, 20));
    ASSERT_TRUE(c) << lit;
    EXPECT_EQ(c->witness, range(3, 20));
    expect_valid(*c);
  }
  EXPECT_THROW(schreier_transfer(O("1"), Window(1, 2)), std::invalid_argument);
}

TEST(Transfer, LargeIndex) {
  TransferPlan plan;
  auto boundary = large_index_transfer(FamilySpec::down(FamilySpec::B(O("1"))), O("1"), Window(1, 20),
                                       14, std::nullopt, &plan);
  ASSERT_TRUE(boundary);
  EXPECT_EQ(plan.branch, IndexBranch::kBoundary);
  EXPECT_TRUE(plan.lifted);
  expect_valid(*boundary);

  auto above = large_index_transfer(FamilySpec::down(FamilySpec::A(O("w*2"))), O("1"), Window(1, 40), 14,
                                    std::nullopt, &plan);
  ASSERT_TRUE(above);
  EXPECT_EQ(plan.branch, IndexBranch::kFirst);
  EXPECT_EQ(above->witness, range(3, 14));
  expect_valid(*above);

  auto all = large_index_transfer(FamilySpec::all(), O("1"), Window(1, 12), 12, O("w^w"));
  ASSERT_TRUE(all);
  EXPECT_EQ(all->witness, range(3, 12));

  EXPECT_THROW(large_index_transfer(FamilySpec::down(FamilySpec::A(O("3"))), O("1"), Window(1, 20), 10),
               std::invalid_argument);
}

TEST(Transfer, AssumeDense) {
  auto c = assume_dense_transfer(FamilySpec::F(O("1")), O("1"), Window(1, 20), 12);
  ASSERT_TRUE(c);
  expect_valid(*c);
  EXPECT_EQ(c->hereditary, "F:1");
}

TEST(Certificates, TamperingIsDetected) {
  auto cert = *homogenize(FamilySpec::A(O("2")), parity_sum_coloring(), Window(1, 20), 4);
  Certificate moved = cert;
  moved.witness = FiniteSet{1, 3, 5, 8};
  CheckResult r = check_certificate(moved);
  EXPECT_FALSE(r.property_holds);
  EXPECT_FALSE(r.ok());

  Certificate resized = cert;
  resized.witness = FiniteSet{1, 3, 5};
  r = check_certificate(resized);
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.reason.find("target"), std::string::npos);

  Certificate relabeled = cert;
  relabeled.color = 2;
  EXPECT_FALSE(check_certificate(relabeled).property_holds);

  Certificate retold = cert;
  retold.transcript = "0000000000000000";
  r = check_certificate(retold);
  EXPECT_TRUE(r.property_holds);
  EXPECT_FALSE(r.transcript_matches);
  EXPECT_FALSE(r.ok());

  Certificate garbage = cert;
  garbage.family = "Q:3";
  r = check_certificate(garbage);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.reason.empty());
}

TEST(Certificates, SealRefusesFalseClaims) {
  Certificate c;
  c.kind = CertificateKind::kChain;
  c.witness = FiniteSet{1, 2, 3};
  c.hereditary = "F:1";
  c.window = Window(1, 5);
  c.target = 3;
  EXPECT_THROW(seal(c), std::logic_error);
  c.witness = FiniteSet{3, 4, 5};
  EXPECT_NO_THROW(seal(c));
}

}  // namespace

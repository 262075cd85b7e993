#pragma once

// The acceptance suite: each criterion re-derives library answers from an
// independent oracle and reports one pass/fail line. Shared by the
// acceptance test binary and `schreier check`.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "schreier/canonical.hpp"
#include "schreier/cb_index.hpp"
#include "schreier/certificate.hpp"
#include "schreier/coloring.hpp"
#include "schreier/family.hpp"
#include "schreier/finite_set.hpp"
#include "schreier/ordinal.hpp"
#include "schreier/ramsey.hpp"
#include "schreier/uniform_system.hpp"

namespace schreier::selfcheck {

namespace oracle {

// Ordinal addition on raw term lists: keep the terms of x with exponent
// greater than y's leading exponent, merge an equal one, then append y.
inline Ordinal add(const Ordinal& x, const Ordinal& y) {
  if (y.is_zero()) return x;
  const auto& lead = y.terms().front();
  std::vector<Ordinal::Term> out;
  for (const auto& t : x.terms()) {
    if (t.exponent > lead.exponent) {
      out.push_back(t);
    } else {
      if (t.exponent == lead.exponent) {
        out.push_back({lead.exponent, t.coefficient + lead.coefficient});
        out.insert(out.end(), y.terms().begin() + 1, y.terms().end());
        return Ordinal::from_terms(out);
      }
      break;
    }
  }
  out.insert(out.end(), y.terms().begin(), y.terms().end());
  return Ordinal::from_terms(out);
}

inline Ordinal power(const Ordinal& a, std::uint64_t p = 1) {
  return Ordinal::from_terms({Ordinal::Term{a, p}});
}

inline constexpr std::size_t kRanOut = std::numeric_limits<std::size_t>::max();

/// Length of the initial segment of s that is one member of B_a, or kRanOut
/// when s ends first. B_0 is the singletons; a member of B_{b+1} is
/// n = min s consecutive members of B_b; at a limit a, the members starting
/// at n are those of B_{a_n}. The grammar never rejects a continuation, so
/// every parse either completes or runs out.
inline std::size_t b_block(const Ordinal& a, SetView s) {
  if (s.empty()) return kRanOut;
  auto c = classify(a);
  if (c.kind == OrdinalKind::kZero) return 1;
  if (c.kind == OrdinalKind::kLimit) return oracle::b_block(fundamental(a, s[0]), s);
  std::size_t pos = 0;
  for (Element i = 0; i < s[0]; ++i) {
    std::size_t k = oracle::b_block(c.predecessor, s.subspan(pos));
    if (k == kRanOut) return kRanOut;
    pos += k;
  }
  return pos;
}

/// Length of the member prefix of s in A_xi, or kRanOut. For
/// xi = w^{a_1} p_1 + ... + w^{a_k} p_k a member is p_k members of B_{a_k},
/// then p_{k-1} of B_{a_{k-1}}, and so on up to B_{a_1}, consecutive.
inline std::size_t a_parse(const Ordinal& xi, SetView s) {
  const auto& terms = xi.terms();
  std::size_t pos = 0;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    for (std::uint64_t j = 0; j < it->coefficient; ++j) {
      std::size_t k = oracle::b_block(it->exponent, s.subspan(pos));
      if (k == kRanOut) return kRanOut;
      pos += k;
    }
  }
  return pos;
}

inline bool member_A(const Ordinal& xi, SetView s) { return oracle::a_parse(xi, s) == s.size(); }

/// s is a proper initial segment of a member.
inline bool proper_prefix(const Ordinal& xi, SetView s) { return oracle::a_parse(xi, s) == kRanOut; }

/// F_a membership by minimum piece count (dynamic programming over split
/// points, no greedy step).
inline bool member_F(const Ordinal& a, SetView s) {
  if (s.empty()) return false;
  auto c = classify(a);
  if (c.kind == OrdinalKind::kZero) return s.size() == 1;
  if (c.kind == OrdinalKind::kLimit) {
    for (Element n = 1; n <= s[0]; ++n)
      if (oracle::member_F(fundamental(a, n), s)) return true;
    return false;
  }
  const std::size_t k = s.size(), inf = k + 1;
  std::vector<std::size_t> best(k + 1, inf);
  best[k] = 0;
  for (std::size_t i = k; i-- > 0;)
    for (std::size_t j = i + 1; j <= k; ++j)
      if (best[j] != inf && oracle::member_F(c.predecessor, s.subspan(i, j - i)))
        best[i] = std::min(best[i], best[j] + 1);
  return best[0] <= s[0];
}

/// Every decomposition of A into consecutive members followed by a tail that
/// is a proper initial segment of a member (or empty).
inline std::vector<CanonicalRep> all_decompositions(const Ordinal& xi, SetView A) {
  std::vector<CanonicalRep> out;
  std::vector<FiniteSet> blocks;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    SetView rest = A.subspan(pos);
    if (rest.empty() || oracle::proper_prefix(xi, rest)) out.push_back({blocks, FiniteSet(rest)});
    for (std::size_t k = 1; k <= rest.size(); ++k) {
      if (!oracle::member_A(xi, rest.first(k))) continue;
      blocks.emplace_back(rest.first(k));
      self(self, pos + k);
      blocks.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<Element> subset_of(std::uint64_t mask, Element lo = 1) {
  std::vector<Element> s;
  for (Element i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) s.push_back(lo + i);
  return s;
}

}  // namespace oracle

struct Outcome {
  bool passed = true;
  std::string detail;
};

namespace detail {

class Collector {
 public:
  template <class... Args>
  void fail(const Args&... parts) {
    if (!failures_++) {
      std::ostringstream os;
      (os << ... << parts);
      first_ = os.str();
    }
  }
  bool ok() const { return failures_ == 0; }
  Outcome finish(std::string summary) const {
    if (ok()) return {true, std::move(summary)};
    return {false, std::to_string(failures_) + " failure(s); first: " + first_};
  }

 private:
  std::size_t failures_ = 0;
  std::string first_;
};

inline std::string str(const Ordinal& x) { return to_string(x); }

// Random ordinal with at most three terms; at depth 0 the exponents are
// naturals up to max_exp. Fundamental sequences of w^a unroll through every
// ordinal below a, so exponents of exponents stay small.
inline Ordinal random_ordinal(std::mt19937_64& rng, int depth, int max_exp = 5) {
  std::uniform_int_distribution<int> nterms(1, 3), coef(1, 4), nat(0, max_exp);
  std::set<Ordinal, std::greater<>> exps;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    exps.insert(depth == 0 ? Ordinal(nat(rng)) : random_ordinal(rng, depth - 1, max_exp));
  std::vector<Ordinal::Term> terms;
  for (const auto& e : exps) terms.push_back({e, static_cast<std::uint64_t>(coef(rng))});
  return Ordinal::from_terms(terms);
}

inline Ordinal random_limit(std::mt19937_64& rng, int depth, int max_exp = 5) {
  for (;;) {
    Ordinal x = random_ordinal(rng, depth, max_exp);
    if (classify(x).kind == OrdinalKind::kLimit) return x;
  }
}

inline std::vector<Ordinal> system_sample() {
  std::vector<Ordinal> out;
  for (auto lit : {"1", "2", "3", "w", "w+1", "w*2", "w^2", "w^w"}) out.push_back(parse_ordinal(lit));
  return out;
}

inline std::vector<std::uint32_t> masks_of(const Family& f, const Window& w) {
  std::vector<std::uint32_t> out;
  for_each_member(f, w, [&](SetView s) {
    std::uint32_t m = 0;
    for (Element x : s) m |= 1u << (x - 1);
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline FiniteSet from_mask(std::uint64_t mask) { return FiniteSet(oracle::subset_of(mask)); }

}  // namespace detail

// 1. Each case of the fundamental-sequence assignment, checked against its
//    closed form with independently implemented addition.
inline Outcome fundamental_identities() {
  detail::Collector c;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::uint64_t> big(1, 1000), small(1, 12), coef(2, 6);
  const Ordinal w = Ordinal::omega();
  auto expect = [&](int which, const Ordinal& x, std::uint64_t n, const Ordinal& want) {
    Ordinal got = fundamental(x, n);
    if (got != want)
      c.fail("case ", which, ": (", detail::str(x), ")_", n, " = ", detail::str(got),
             ", closed form gives ", detail::str(want));
    if (!(got < x)) c.fail("case ", which, ": (", detail::str(x), ")_", n, " is not below it");
  };
  // (1) w_n = n - 1
  for (int i = 0; i < 200; ++i) {
    std::uint64_t n = big(rng);
    expect(1, w, n, Ordinal(n - 1));
  }
  // (2) (w^{a+1})_n = w^a (n-1) + (w^a)_n, with (w^0)_n = 0
  for (int i = 0; i < 200; ++i) {
    Ordinal a = i < 20 ? Ordinal(i % 4) : detail::random_ordinal(rng, 0, 2);
    std::uint64_t n = a.is_natural() ? big(rng) : small(rng);
    Ordinal head = n > 1 ? oracle::power(a, n - 1) : Ordinal();
    Ordinal tail = a.is_zero() ? Ordinal() : fundamental(oracle::power(a), n);
    expect(2, oracle::power(oracle::add(a, Ordinal(1))), n, oracle::add(head, tail));
  }
  // (3) (w^a)_n = (w^{a_n})_n for limit a, with (w^0)_n = 0
  for (int i = 0; i < 200; ++i) {
    Ordinal a = detail::random_limit(rng, 0, 2);
    std::uint64_t n = small(rng);
    Ordinal an = fundamental(a, n);
    expect(3, oracle::power(a), n, an.is_zero() ? Ordinal() : fundamental(oracle::power(an), n));
  }
  // (4) (w^a p)_n = w^a (p-1) + (w^a)_n
  for (int i = 0; i < 200; ++i) {
    Ordinal a = i % 2 ? detail::random_ordinal(rng, 0, 2) : Ordinal(1 + i % 5);
    std::uint64_t p = coef(rng), n = small(rng);
    expect(4, oracle::power(a, p), n,
           oracle::add(oracle::power(a, p - 1), fundamental(oracle::power(a), n)));
  }
  // (5) sum_{i<m} w^{a_i} p_i + (w^{a_m} p_m)_n
  for (int i = 0; i < 200; ++i) {
    Ordinal x;
    do x = detail::random_limit(rng, 1, 2);
    while (x.terms().size() < 2);
    std::uint64_t n = small(rng);
    auto terms = x.terms();
    Ordinal last = Ordinal::from_terms({terms.back()});
    terms.pop_back();
    expect(5, x, n, oracle::add(Ordinal::from_terms(terms), fundamental(last, n)));
  }
  return c.finish("1000 samples, 200 per case, all equal to the closed forms");
}

// 2. A(xi)(m) = A(xi_m) above m, as exact sets on [1,30], plus agreement of
//    both sides with the block-decomposition oracle on members and probes.
inline Outcome system_law() {
  detail::Collector c;
  std::mt19937_64 rng(7);
  std::size_t compared = 0, probes = 0;
  for (const Ordinal& xi : detail::system_sample()) {
    for (Element m = 1; m <= 12; ++m) {
      Ordinal xm = descend(xi, m);
      Window above(m + 1, 30);
      auto lhs = detail::masks_of(section_family(make_family(FamilySpec::A(xi)), m), above);
      auto rhs = detail::masks_of(make_family(FamilySpec::A(xm)), above);
      compared += lhs.size();
      if (lhs != rhs) {
        c.fail("A(", detail::str(xi), ")(", m, ") has ", lhs.size(), " members, A(",
               detail::str(xm), ") above ", m, " has ", rhs.size());
        continue;
      }
      // Members, sampled evenly, and random subsets of (m, 30].
      std::size_t stride = std::max<std::size_t>(1, lhs.size() / 150);
      auto probe = [&](std::uint32_t mask, bool expected) {
        FiniteSet s = detail::from_mask(mask);
        bool with_m = oracle::member_A(xi, prepend(m, s));
        bool below = oracle::member_A(xm, s);
        ++probes;
        if (with_m != expected || below != expected)
          c.fail("oracle disagrees at xi=", detail::str(xi), ", m=", m, ", s=", to_string(s),
                 ": enumerated ", expected, ", oracle ", with_m, "/", below);
      };
      for (std::size_t i = 0; i < lhs.size(); i += stride) probe(lhs[i], true);
      std::uniform_int_distribution<std::uint32_t> bits(0, (1u << (30 - m)) - 1);
      for (int i = 0; i < 150; ++i) {
        std::uint32_t mask = bits(rng) << m;
        probe(mask, std::binary_search(lhs.begin(), lhs.end(), mask));
      }
    }
  }
  return c.finish("96 sections equal (" + std::to_string(compared) + " members); " +
                  std::to_string(probes) + " oracle probes agree");
}

// 3. Thinness on [1,30] for the sampled A(xi), the block oracle never finds
//    two member prefixes, and the prefix trichotomy on every nonempty subset
//    of [1,15].
inline Outcome thin_and_trichotomy() {
  detail::Collector c;
  std::mt19937_64 rng(11);
  std::size_t witnessed = 0, by_parse = 0;
  for (const Ordinal& xi : detail::system_sample()) {
    Family f = make_family(FamilySpec::A(xi));
    auto thin = check_thin(f, Window(1, 30));
    if (!thin.ok)
      c.fail("A(", detail::str(xi), ") not thin: ", to_string(thin.witness->first), " < ",
             to_string(thin.witness->second));
    std::uniform_int_distribution<std::uint32_t> bits(1, (1u << 20) - 1);
    for (int i = 0; i < 2000; ++i) {
      FiniteSet s = detail::from_mask(bits(rng));
      int members = 0;
      for (std::size_t k = 1; k <= s.size(); ++k) members += oracle::member_A(xi, s.view().first(k));
      if (members > 1) c.fail("oracle: ", to_string(s), " has ", members, " member prefixes");
    }
    for (std::uint32_t mask = 1; mask < (1u << 15); ++mask) {
      FiniteSet s = detail::from_mask(mask);
      Trichotomy t = trichotomy(f, s);
      bool member_prefix = false;
      for (std::size_t k = 1; k <= s.size(); ++k)
        if (oracle::member_A(xi, s.view().first(k))) member_prefix = true;
      if (t.kind == TrichotomyKind::kExtendsMember) {
        if (!is_initial_segment(t.witness, s) || !oracle::member_A(xi, t.witness))
          c.fail("A(", detail::str(xi), "): bad member witness ", to_string(t.witness), " for ",
                 to_string(s));
        continue;
      }
      if (member_prefix) {
        c.fail("A(", detail::str(xi), "): ", to_string(s),
               " reported as a proper prefix but has a member prefix");
        continue;
      }
      // Witness the extension by appending consecutive elements up to 40.
      std::vector<Element> t2(s.begin(), s.end());
      bool found = false;
      for (Element x = s.max() + 1; x <= 40 && !found; ++x) {
        t2.push_back(x);
        found = oracle::member_A(xi, t2);
      }
      if (found) {
        ++witnessed;
      } else {
        ++by_parse;
        if (!oracle::proper_prefix(xi, s))
          c.fail("A(", detail::str(xi), "): ", to_string(s), " is not a proper initial segment");
      }
    }
  }
  return c.finish("8 families thin on [1,30]; trichotomy on 8 x 32767 sets (" +
                  std::to_string(witnessed) + " proper prefixes completed inside [1,40], " +
                  std::to_string(by_parse) + " confirmed by the block parse)");
}

// 4. A(k) is exactly the k-subsets.
inline Outcome k_uniform() {
  detail::Collector c;
  for (std::uint64_t k = 0; k <= 5; ++k) {
    auto got = enumerate(make_family(FamilySpec::A(Ordinal(k))), Window(1, 12));
    std::vector<FiniteSet> want;
    std::vector<bool> pick(12, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      std::vector<Element> s;
      for (Element i = 0; i < 12; ++i)
        if (pick[i]) s.push_back(i + 1);
      want.emplace_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (got != want) c.fail("A(", k, ") on [1,12] has ", got.size(), " members, want ", want.size());
  }
  return c.finish("k = 0..5 on [1,12] match the k-subsets in order");
}

// 5. The greedy canonical representation is the unique decomposition found
//    by brute force.
inline Outcome canonical_uniqueness() {
  detail::Collector c;
  std::size_t checked = 0;
  for (auto lit : {"2", "w", "w+1", "w*2"}) {
    Ordinal xi = parse_ordinal(lit);
    Family f = make_family(FamilySpec::A(xi));
    for (std::uint32_t mask = 1; mask < (1u << 15); ++mask) {
      FiniteSet A = detail::from_mask(mask);
      auto all = oracle::all_decompositions(xi, A);
      CanonicalRep rep = canonical_rep(f, A);
      ++checked;
      if (all.size() != 1 || !(all[0] == rep))
        c.fail("A(", lit, "), ", to_string(A), ": ", all.size(),
               " brute-force decompositions, greedy type ", rep.type());
    }
  }
  return c.finish(std::to_string(checked) + " sets, each with exactly one decomposition, equal to the greedy one");
}

// 6. Brute-force strong derivatives of (A_k)_* against the symbolic ranks,
//    and symbolic index xi + 1.
inline Outcome cb_oracle() {
  detail::Collector c;
  std::size_t ranks = 0;
  for (std::uint64_t k = 0; k <= 4; ++k) {
    Family f = make_family(FamilySpec::down(FamilySpec::A(Ordinal(k))));
    RankTable t = brute_derivative(f, Window(1, 14), 10);
    if (!t.index || *t.index != k + 1)
      c.fail("(A_", k, ")_* brute index ", t.index ? std::to_string(*t.index) : "none", ", want ", k + 1);
    Ordinal sym = symbolic_index(FamilySpec::down(FamilySpec::A(Ordinal(k))));
    if (sym != Ordinal(k + 1)) c.fail("(A_", k, ")_* symbolic index ", detail::str(sym));
    for (const auto& [s, r] : t.rank) {
      ++ranks;
      if (symbolic_rank(Ordinal(k), s) != Ordinal(r))
        c.fail("rank of ", to_string(s), " in (A_", k, ")_*: brute ", r, ", symbolic ",
               detail::str(symbolic_rank(Ordinal(k), s)));
    }
  }
  std::mt19937_64 rng(5);
  auto sample = detail::system_sample();
  for (int i = 0; i < 50; ++i) sample.push_back(detail::random_ordinal(rng, 2));
  for (const Ordinal& xi : sample) {
    Ordinal want = oracle::add(xi, Ordinal(1));
    if (symbolic_index(FamilySpec::down(FamilySpec::A(xi))) != want ||
        oracle::add(symbolic_rank(xi, {}), Ordinal(1)) != want)
      c.fail("symbolic index of (A_", detail::str(xi), ")_* is not ", detail::str(want));
  }
  return c.finish("k = 0..4 on [1,14]: " + std::to_string(ranks) +
                  " brute ranks match, index k+1; " + std::to_string(sample.size()) +
                  " symbolic indexes equal xi+1");
}

// 7. Classical Ramsey base: pairs, 100 pseudorandom 2-colorings, [1,18].
inline Outcome classical_ramsey() {
  detail::Collector c;
  int found = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto cert = homogenize(FamilySpec::A(Ordinal(2)), hash_coloring(seed), Window(1, 18), 4);
    if (!cert) {
      c.fail("seed ", seed, ": no homogeneous 4-set in [1,18]");
      continue;
    }
    if (auto r = check_certificate(*cert); !r.ok())
      c.fail("seed ", seed, ": certificate rejected: ", r.reason);
    else
      ++found;
  }
  return c.finish(std::to_string(found) + "/100 colorings homogenized and re-checked");
}

// 8. The two boundary examples for the hereditary dichotomy on [1,30].
inline Outcome boundary_examples() {
  detail::Collector c;
  const Window w(1, 30);
  auto expect = [&](const FamilySpec& h, const FamilySpec& spec, CertificateKind want) {
    auto certs = hereditary_dichotomy(h, spec, w, 30);
    if (certs.size() != 1 || certs[0].kind != want) {
      c.fail(to_string(h), " vs ", to_string(spec), ": got ", certs.size(), " certificate(s)",
             certs.empty() ? "" : std::string(", first ") + to_string(certs[0].kind));
      return;
    }
    if (auto r = check_certificate(certs[0]); !r.ok())
      c.fail(to_string(h), " vs ", to_string(spec), ": re-check failed: ", r.reason);
  };
  expect(FamilySpec::F(Ordinal(1)), FamilySpec::example_L(), CertificateKind::kDichotomyBranchB);
  expect(FamilySpec::down(FamilySpec::example_L()), FamilySpec::example_R(),
         CertificateKind::kDichotomyBranchA);
  return c.finish("F:1 vs exL gives branch B, down:exL vs exR gives branch A, on all of [1,30]");
}

// 9. The non-Sperner family.
inline Outcome example_regression() {
  detail::Collector c;
  auto spec = FamilySpec::example_112();
  Family f = make_family(spec);
  const FiniteSet big{1, 2, 3, 4, 5, 6}, small{2, 3, 4, 5};
  if (!f.contains(big)) c.fail("(1,...,6) is not a member");
  if (!f.contains(small)) c.fail("(2,3,4,5) is not a member");
  auto pair = sperner_witness(spec, Window(1, 12));
  if (!pair || pair->first != small || pair->second != big)
    c.fail("sperner witness on [1,12] is ",
           pair ? to_string(pair->first) + " < " + to_string(pair->second) : "none");
  if (!check_thin(f, Window(1, 12)).ok) c.fail("not thin on [1,12]");
  // Sections: 5-sets after 1, A_w after 2, A_{w+n} after n > 2.
  for (std::uint32_t mask = 1; mask < (1u << 14); ++mask) {
    FiniteSet s = detail::from_mask(std::uint64_t{mask} << 1);  // inside [2,15]
    if (f.contains(prepend(1, s)) != (s.size() == 5)) c.fail("section at 1 wrong at ", to_string(s));
  }
  for (std::uint32_t mask = 1; mask < (1u << 13); ++mask) {
    FiniteSet s = detail::from_mask(std::uint64_t{mask} << 2);
    if (f.contains(prepend(2, s)) != oracle::member_A(Ordinal::omega(), s))
      c.fail("section at 2 wrong at ", to_string(s));
    if (s.min() > 3 && f.contains(prepend(3, s)) != oracle::member_A(parse_ordinal("w+3"), s))
      c.fail("section at 3 wrong at ", to_string(s));
  }
  return c.finish("both members present, witness (2,3,4,5) < (1,...,6), thin, sections match");
}

// 10. Transfer for xi = 1, 2 on [1,25] with the two-element shift.
inline Outcome schreier_transfer_check() {
  detail::Collector c;
  std::mt19937_64 rng(3);
  for (std::uint64_t k : {1, 2}) {
    Ordinal xi(k);
    auto cert = schreier_transfer(xi, Window(1, 25));
    if (!cert) {
      c.fail("xi=", k, ": no certificate");
      continue;
    }
    std::vector<Element> shifted;
    for (Element x = 3; x <= 25; ++x) shifted.push_back(x);
    if (cert->witness != FiniteSet(shifted))
      c.fail("xi=", k, ": witness ", to_string(cert->witness), " is not [1,25] minus two");
    if (auto r = check_certificate(*cert); !r.ok()) c.fail("xi=", k, ": re-check: ", r.reason);
    // The membership tests behind the containment, against independent oracles.
    std::uniform_int_distribution<std::uint32_t> bits(1, (1u << 23) - 1);
    for (int i = 0; i < 3000; ++i) {
      FiniteSet idx = detail::from_mask(bits(rng) >> (i % 20));
      if (member_F(xi, idx) != oracle::member_F(xi, idx))
        c.fail("F_", k, " membership of ", to_string(idx), " disagrees with the oracle");
      FiniteSet s = spread(idx, cert->witness);
      const Ordinal b = oracle::power(xi);
      bool star = oracle::member_A(b, s) || oracle::proper_prefix(b, s);
      if (member_B_star(xi, s) != star)
        c.fail("B_", k, " initial-segment test of ", to_string(s), " disagrees with the oracle");
    }
  }
  return c.finish("xi = 1, 2: L = [3,25] certified, F(L) in (B)^* in F exhaustively; oracles agree");
}

// 11. Mutated witnesses are rejected.
inline Outcome certificate_soundness() {
  detail::Collector c;
  std::vector<Certificate> base;
  base.push_back(*homogenize(FamilySpec::A(Ordinal(2)), hash_coloring(17), Window(1, 18), 4));
  base.push_back(hereditary_dichotomy(FamilySpec::down(FamilySpec::example_L()),
                                      FamilySpec::example_R(), Window(1, 16), 8)
                     .at(0));
  base.push_back(hereditary_dichotomy(FamilySpec::F(Ordinal(1)), FamilySpec::example_L(),
                                      Window(1, 16), 8)
                     .at(0));
  base.push_back(*sperner_refine(FamilySpec::example_112(), Window(1, 25), 6));
  base.push_back(*detect_chain(FamilySpec::F(Ordinal(1)), Window(1, 20), 5));
  base.push_back(*schreier_transfer(Ordinal(1), Window(1, 16)));
  std::mt19937_64 rng(99);
  std::ostringstream summary;
  for (const Certificate& cert : base) {
    if (auto r = check_certificate(cert); !r.ok())
      c.fail(to_string(cert.kind), ": original rejected: ", r.reason);
    int rejected = 0, by_property = 0;
    std::vector<Element> ground = cert.window.elements();
    for (int i = 0; i < 100; ++i) {
      std::vector<Element> w = cert.witness.elements();
      std::uniform_int_distribution<std::size_t> at(0, w.size() - 1);
      std::size_t pos = at(rng);
      if (i % 2 == 0 || w.size() == ground.size()) {
        w.erase(w.begin() + pos);
      } else {
        std::vector<Element> free;
        for (Element x : ground)
          if (!std::binary_search(cert.witness.begin(), cert.witness.end(), x)) free.push_back(x);
        std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
        w[pos] = free[pick(rng)];
      }
      Certificate mutant = cert;
      mutant.witness = FiniteSet::from_unsorted(w);
      CheckResult r = check_certificate(mutant);
      if (r.ok())
        c.fail(to_string(cert.kind), ": mutant ", to_string(mutant.witness), " accepted");
      else
        ++rejected;
      by_property += !r.property_holds;
    }
    if (summary.tellp() > 0) summary << ", ";
    summary << to_string(cert.kind) << " " << rejected << "/100 (" << by_property
            << " fail the property)";
  }
  return c.finish(summary.str());
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "fundamental-sequence identities", fundamental_identities},
      {2, "system law for sections", system_law},
      {3, "thinness and prefix trichotomy", thin_and_trichotomy},
      {4, "k-uniform families are k-subsets", k_uniform},
      {5, "canonical representation uniqueness", canonical_uniqueness},
      {6, "Cantor-Bendixson oracle equivalence", cb_oracle},
      {7, "classical Ramsey base case", classical_ramsey},
      {8, "boundary dichotomy examples", boundary_examples},
      {9, "non-Sperner uniform family regression", example_regression},
      {10, "Schreier transfer", schreier_transfer_check},
      {11, "certificate soundness under mutation", certificate_soundness},
  };
  return all;
}

struct Report {
  int id = 0;
  std::string name;
  Outcome outcome;
  double seconds = 0;
};

/// Runs the selected criteria (all when `ids` is empty), printing one line
/// per criterion to `out` as each finishes.
inline std::vector<Report> run(const std::vector<int>& ids, std::ostream& out) {
  std::vector<Report> reports;
  for (const auto& cr : criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), cr.id) == ids.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    out << (o.passed ? "PASS" : "FAIL") << "  criterion " << cr.id << ": " << cr.name << " -- "
        << o.detail << " (" << timing << ")" << std::endl;
    reports.push_back({cr.id, cr.name, std::move(o), secs});
  }
  return reports;
}

}  // namespace schreier::selfcheck

#pragma once

// Certificates emitted by the searches, and the checker that re-derives
// them from scratch by exhausting the witness.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "schreier/coloring.hpp"
#include "schreier/family.hpp"
#include "schreier/finite_set.hpp"
#include "schreier/ordinal.hpp"
#include "schreier/uniform_system.hpp"

namespace schreier {

enum class CertificateKind {
  kHomogeneous,
  kDichotomyBranchA,
  kDichotomyBranchB,
  kSpernerRefined,
  kChain,
  kTransfer,
};

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::kHomogeneous:
      return "Homogeneous";
    case CertificateKind::kDichotomyBranchA:
      return "DichotomyBranchA";
    case CertificateKind::kDichotomyBranchB:
      return "DichotomyBranchB";
    case CertificateKind::kSpernerRefined:
      return "SpernerRefined";
    case CertificateKind::kChain:
      return "Chain";
    case CertificateKind::kTransfer:
      return "Transfer";
  }
  return "?";
}

inline CertificateKind parse_certificate_kind(std::string_view s) {
  for (auto k : {CertificateKind::kHomogeneous, CertificateKind::kDichotomyBranchA,
                 CertificateKind::kDichotomyBranchB, CertificateKind::kSpernerRefined,
                 CertificateKind::kChain, CertificateKind::kTransfer})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown certificate kind '" + std::string(s) + "'");
}

/// What each kind claims about the witness L:
///   Homogeneous       every member of `family` inside L has color `color`
///   SpernerRefined    members of `family` inside L are pairwise incomparable
///   DichotomyBranchA  every subset of a `family` member, inside L, is in `hereditary`
///   DichotomyBranchB  every `hereditary` member inside L is a proper initial
///                     segment of a `family` member
///   Chain             every nonempty initial segment of L is in `hereditary`
///   Transfer          F_xi(L) lies in the initial-segment closure of B_xi, and
///                     that closure lies in F_xi on the window; or, when
///                     `hereditary` is set, F_xi(L) lies in `hereditary`
/// Every kind also requires L inside the window and |L| >= target.
struct Certificate {
  CertificateKind kind = CertificateKind::kHomogeneous;
  FiniteSet witness;
  std::string family;
  std::string hereditary;
  std::string coloring;
  std::uint32_t color = 0;
  std::string xi;
  Window window;
  std::uint32_t target = 0;
  std::string order = "lex";
  std::uint64_t checked = 0;
  std::string transcript;

  bool operator==(const Certificate&) const = default;
};

/// FNV-1a over a canonical byte stream of the checked facts.
class Transcript {
 public:
  void add(std::string_view s) {
    for (unsigned char c : s) mix(c);
    mix(0xff);
  }
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(v >> (8 * i)));
  }
  void add(SetView s) {
    add(std::uint64_t{s.size()});
    for (Element x : s) add(std::uint64_t{x});
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  void mix(unsigned char c) {
    h_ ^= c;
    h_ *= 0x100000001b3ULL;
  }
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

struct CheckResult {
  bool property_holds = false;
  bool transcript_matches = false;
  std::string reason;
  std::string transcript;
  std::uint64_t checked = 0;

  bool ok() const { return property_holds && transcript_matches; }
};

namespace detail {

template <class Visit>
void for_each_member_within(const Family& f, SetView L, Visit&& visit) {
  if (L.empty()) {
    if (f.contains(SetView{})) visit(SetView{});
    return;
  }
  for_each_member(f, Window::over(L), [&](SetView s) {
    visit(s);
    return true;
  });
}

inline Family subset_closure_family(const Family& f) {
  if (!f.contains_subset) throw std::invalid_argument("family " + f.name + " has no subset closure");
  Family d;
  d.name = "down:" + f.name;
  d.contains = f.contains_subset;
  d.contains_prefix = f.contains_subset;
  d.contains_subset = f.contains_subset;
  d.hereditary = true;
  return d;
}

class CertificateChecker {
 public:
  explicit CertificateChecker(const Certificate& c) : c_(c) {}

  CheckResult run() {
    header();
    if (!c_.window.contains(c_.witness.view())) fail("witness leaves the window");
    if (c_.witness.size() < c_.target) fail("witness smaller than the target");
    switch (c_.kind) {
      case CertificateKind::kHomogeneous:
        homogeneous();
        break;
      case CertificateKind::kSpernerRefined:
        sperner();
        break;
      case CertificateKind::kDichotomyBranchA:
        branch_a();
        break;
      case CertificateKind::kDichotomyBranchB:
        branch_b();
        break;
      case CertificateKind::kChain:
        chain();
        break;
      case CertificateKind::kTransfer:
        transfer();
        break;
    }
    r_.property_holds = r_.reason.empty();
    r_.transcript = t_.hex();
    r_.transcript_matches = r_.transcript == c_.transcript;
    if (r_.property_holds && !r_.transcript_matches) r_.reason = "transcript mismatch";
    return r_;
  }

 private:
  void fail(std::string why) {
    if (r_.reason.empty()) r_.reason = std::move(why);
  }
  void record(SetView s, std::uint64_t verdict) {
    t_.add(s);
    t_.add(verdict);
    ++r_.checked;
  }

  void header() {
    t_.add(to_string(c_.kind));
    t_.add(c_.family);
    t_.add(c_.hereditary);
    t_.add(c_.coloring);
    t_.add(std::uint64_t{c_.color});
    t_.add(c_.xi);
    t_.add(to_string(c_.window));
    t_.add(std::uint64_t{c_.target});
    t_.add(c_.order);
    t_.add(c_.witness.view());
  }

  void homogeneous() {
    Family f = make_family(parse_family(c_.family));
    Coloring col = make_coloring(c_.coloring);
    for_each_member_within(f, c_.witness, [&](SetView s) {
      std::uint32_t got = col.color(s);
      record(s, got);
      if (got != c_.color) fail(to_string(s) + " has color " + std::to_string(got));
    });
  }

  void sperner() {
    Family f = make_family(parse_family(c_.family));
    if (c_.witness.size() > 64) {
      fail("witness too large to check");
      return;
    }
    std::vector<std::uint64_t> masks;
    std::vector<FiniteSet> members;
    for_each_member_within(f, c_.witness, [&](SetView s) {
      std::uint64_t m = 0;
      for (Element x : s)
        m |= std::uint64_t{1} << (std::lower_bound(c_.witness.begin(), c_.witness.end(), x) -
                                  c_.witness.begin());
      record(s, 1);
      masks.push_back(m);
      members.emplace_back(s);
    });
    for (std::size_t i = 0; i < masks.size(); ++i)
      for (std::size_t j = 0; j < masks.size(); ++j)
        if (i != j && (masks[i] & ~masks[j]) == 0)
          return fail(to_string(members[i]) + " is inside " + to_string(members[j]));
  }

  void branch_a() {
    Family closure = subset_closure_family(make_family(parse_family(c_.family)));
    Family h = make_family(parse_family(c_.hereditary));
    for_each_member_within(closure, c_.witness, [&](SetView s) {
      bool in = h.contains(s);
      record(s, in);
      if (!in) fail(to_string(s) + " is below a member but not in " + c_.hereditary);
    });
  }

  void branch_b() {
    Family f = make_family(parse_family(c_.family));
    Family h = make_family(parse_family(c_.hereditary));
    for_each_member_within(h, c_.witness, [&](SetView s) {
      bool proper = f.contains_prefix(s) && !f.contains(s);
      record(s, proper);
      if (!proper) fail(to_string(s) + " is not a proper initial segment of a member");
    });
  }

  void chain() {
    Family h = make_family(parse_family(c_.hereditary));
    for (std::size_t k = 1; k <= c_.witness.size(); ++k) {
      SetView s = c_.witness.view().first(k);
      bool in = h.contains(s);
      record(s, in);
      if (!in) fail(to_string(s) + " is not in " + c_.hereditary);
    }
  }

  void transfer() {
    Ordinal xi = parse_ordinal(c_.xi);
    const bool to_closure = c_.hereditary.empty();
    Family target = to_closure ? Family{} : make_family(parse_family(c_.hereditary));
    for_each_spread_F(xi, c_.witness, [&](const FiniteSet& s) {
      bool in = to_closure ? member_B_star(xi, s) : target.contains(s);
      record(s, in);
      if (!in) fail(to_string(s) + " escapes the target");
      return true;
    });
    if (!to_closure) return;
    // Every state is accepting: the enumeration walks the whole
    // initial-segment closure of B_xi inside the window.
    Family star;
    star.name = "star:B:" + c_.xi;
    star.contains = [xi](SetView s) { return member_B_star(xi, s); };
    auto walk = std::make_shared<PrefixAutomaton>(*make_family(FamilySpec::B(xi)).automaton);
    walk->accepting = [](StateId) { return true; };
    walk->min_more = nullptr;
    star.automaton = walk;
    for_each_member(star, c_.window, [&](SetView s) {
      if (s.empty()) return true;
      bool in = member_F(xi, s);
      record(s, in);
      if (!in) fail(to_string(s) + " is an initial segment of a B member but not in F");
      return true;
    });
  }

  const Certificate& c_;
  CheckResult r_;
  Transcript t_;
};

}  // namespace detail

/// Re-checks a certificate by exhausting its witness, and compares the
/// transcript of that run with the recorded one.
inline CheckResult check_certificate(const Certificate& c) {
  try {
    return detail::CertificateChecker(c).run();
  } catch (const std::exception& e) {
    CheckResult r;
    r.reason = e.what();
    return r;
  }
}

/// Fills in the transcript and count by running the checker; throws if the
/// claimed property does not hold.
inline Certificate seal(Certificate c) {
  c.transcript.clear();
  CheckResult r = check_certificate(c);
  if (!r.property_holds)
    throw std::logic_error(std::string("refusing to seal a false ") + to_string(c.kind) +
                           " certificate: " + r.reason);
  c.transcript = r.transcript;
  c.checked = r.checked;
  return c;
}

}  // namespace schreier

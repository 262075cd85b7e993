#pragma once

// Windowed searches for the Ramsey-type dichotomies. Each search returns a
// sealed certificate that check_certificate re-derives independently.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schreier/cb_index.hpp"
#include "schreier/certificate.hpp"
#include "schreier/coloring.hpp"
#include "schreier/family.hpp"
#include "schreier/finite_set.hpp"
#include "schreier/ordinal.hpp"
#include "schreier/uniform_system.hpp"

namespace schreier {

/// Visits the members of f of the form T u {x} with T a subset of L; every
/// element of L must be below x. `visit` returns false to stop; the function
/// then returns false.
template <class Visit>
bool for_each_member_with_max(const Family& f, SetView L, Element x, Visit&& visit) {
  std::vector<Element> stack;
  auto with_x = [&](auto&& emit) {
    stack.push_back(x);
    bool go = emit(SetView(stack));
    stack.pop_back();
    return go;
  };
  if (f.automaton) {
    const auto& a = *f.automaton;
    auto rec = [&](auto&& self, StateId state, std::size_t from) -> bool {
      StateId end = a.next(state, x);
      if (end != kDeadState && a.accepting(end) && !with_x(visit)) return false;
      for (std::size_t i = from; i < L.size(); ++i) {
        StateId nxt = a.next(state, L[i]);
        if (nxt == kDeadState) continue;
        stack.push_back(L[i]);
        bool go = self(self, nxt, i + 1);
        stack.pop_back();
        if (!go) return false;
      }
      return true;
    };
    StateId s0 = a.start();
    return s0 == kDeadState || rec(rec, s0, 0);
  }
  const auto& keep = f.contains_prefix ? f.contains_prefix
                     : f.hereditary    ? f.contains
                                       : std::function<bool(SetView)>{};
  if (!keep && L.size() > kMaxUnprunedGround)
    throw std::length_error("family '" + f.name + "' has no prefix test");
  auto rec = [&](auto&& self, std::size_t from) -> bool {
    if (!with_x([&](SetView s) { return !f.contains(s) || visit(s); })) return false;
    for (std::size_t i = from; i < L.size(); ++i) {
      stack.push_back(L[i]);
      bool go = !keep || keep(SetView(stack)) ? self(self, i + 1) : true;
      stack.pop_back();
      if (!go) return false;
    }
    return true;
  };
  return rec(rec, 0);
}

// ---------------------------------------------------------------------------
// Homogeneous sets

namespace detail {

/// Lexicographically first L of size `target` in the window on which every
/// member of f gets one color (the required one, if given).
inline std::optional<std::pair<FiniteSet, std::uint32_t>> homogeneous_search(
    const Family& f, const Coloring& c, const Window& w, std::uint32_t target,
    std::optional<std::uint32_t> required = std::nullopt) {
  const std::vector<Element> g = w.elements();
  std::vector<Element> L;
  std::optional<std::uint32_t> color = required;
  // The empty set is a member of f inside every L.
  if (f.contains(SetView{})) {
    std::uint32_t c0 = c.color(SetView{});
    if (color && *color != c0) return std::nullopt;
    color = c0;
  }
  auto rec = [&](auto&& self) -> bool {
    if (L.size() == target) return true;
    std::size_t start = L.empty() ? 0 : std::upper_bound(g.begin(), g.end(), L.back()) - g.begin();
    for (std::size_t i = start; i + (target - L.size()) <= g.size(); ++i) {
      Element x = g[i];
      auto saved = color;
      bool ok = for_each_member_with_max(f, L, x, [&](SetView s) {
        std::uint32_t got = c.color(s);
        if (!color) color = got;
        return got == *color;
      });
      if (ok) {
        L.push_back(x);
        if (self(self)) return true;
        L.pop_back();
      }
      color = saved;
    }
    return false;
  };
  if (!rec(rec)) return std::nullopt;
  return std::make_pair(FiniteSet(L), color.value_or(1));
}

}  // namespace detail

/// Searches the window for L with |L| = target on which every member of the
/// family inside L has the same color. Returns nullopt if the window is
/// exhausted; existence is only guaranteed on infinite ground sets.
inline std::optional<Certificate> homogenize(const FamilySpec& spec, const Coloring& c,
                                             const Window& w, std::uint32_t target) {
  if (target == 0) throw std::invalid_argument("homogenize needs target >= 1");
  auto found = detail::homogeneous_search(make_family(spec), c, w, target);
  if (!found) return std::nullopt;
  Certificate cert;
  cert.kind = CertificateKind::kHomogeneous;
  cert.witness = found->first;
  cert.family = to_string(spec);
  cert.coloring = c.name;
  cert.color = found->second;
  cert.window = w;
  cert.target = target;
  return seal(std::move(cert));
}

/// Picks the color that the stream should keep, given the colors recorded
/// at each pick so far.
using ColorStrategy =
    std::function<std::uint32_t(const std::vector<std::uint32_t>& picks, std::uint32_t colors)>;

/// The most frequent color; ties go to the smaller color. This stands in
/// for the proof's choice of a color that recurs infinitely often.
inline std::uint32_t majority_strategy(const std::vector<std::uint32_t>& picks,
                                       std::uint32_t colors) {
  std::vector<std::size_t> count(colors + 1, 0);
  for (auto p : picks) ++count.at(p);
  std::uint32_t best = 1;
  for (std::uint32_t k = 2; k <= colors; ++k)
    if (count[k] > count[best]) best = k;
  return best;
}

struct StreamBudget {
  std::size_t max_prefix = 16;        // picks at the top level
  std::size_t horizon = 64;           // elements of M read
  std::uint64_t max_nodes = 2000000;  // recursive calls
};

enum class StreamStatus { kComplete, kBudgetExhausted };

struct StreamResult {
  StreamStatus status = StreamStatus::kComplete;
  FiniteSet prefix;
  std::uint32_t color = 1;
  /// (m_n, i_n): the element picked at step n and the color of its branch.
  std::vector<std::pair<Element, std::uint32_t>> picks;
  std::optional<Certificate> certificate;
  std::uint64_t nodes = 0;
};

namespace detail {

class StreamHomogenizer {
 public:
  struct BudgetExceeded {};

  StreamHomogenizer(const Coloring& c, const ColorStrategy& strategy, std::uint64_t max_nodes)
      : c_(c), strategy_(strategy), max_nodes_(max_nodes) {}

  struct Outcome {
    std::vector<Element> kept;
    std::uint32_t color = 1;
    std::vector<std::pair<Element, std::uint32_t>> picks;
  };

  // Homogenizes the family {s : prefix u s in the original family} over
  // `ground`; `section(m)` gives the ordinal state after reading m, or
  // nullopt if no member goes through m.
  using Section = std::function<std::optional<OrdinalTable::Id>(Element)>;

  Outcome run(const Section& section, bool is_zero, std::vector<Element>& prefix,
              std::vector<Element> ground, std::size_t max_picks) {
    if (++nodes_ > max_nodes_) throw BudgetExceeded{};
    Outcome out;
    if (is_zero) {
      out.kept = std::move(ground);
      out.color = c_.color(prefix);
      return out;
    }
    std::vector<std::uint32_t> colors;
    std::vector<Element> tail = std::move(ground);
    auto& table = OrdinalTable::local();
    while (!tail.empty() && out.picks.size() < max_picks) {
      Element m = tail.front();
      std::vector<Element> rest(tail.begin() + 1, tail.end());
      std::optional<OrdinalTable::Id> next = section(m);
      std::uint32_t color;
      if (!next) {
        // No member passes through m: every color is vacuously fine.
        color = 1;
        tail = std::move(rest);
      } else {
        prefix.push_back(m);
        OrdinalTable::Id from = *next;
        Section step = [&table, from](Element x) -> std::optional<OrdinalTable::Id> {
          return table.step(from, x);
        };
        Outcome sub = run(step, *next == OrdinalTable::kZero, prefix, std::move(rest),
                          static_cast<std::size_t>(-1));
        prefix.pop_back();
        color = sub.color;
        tail = std::move(sub.kept);
      }
      out.picks.emplace_back(m, color);
      colors.push_back(color);
    }
    out.color = colors.empty() ? 1 : strategy_(colors, c_.colors);
    for (auto [m, col] : out.picks)
      if (col == out.color) out.kept.push_back(m);
    return out;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  const Coloring& c_;
  const ColorStrategy& strategy_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Follows the homogenization recursion on the first `budget.horizon`
/// elements of M: take m = min of the current tail, homogenize the section
/// at m over the rest of the tail, record that branch's color, continue on
/// what the branch kept; finally keep the picks whose color the strategy
/// selects. Every member inside the emitted prefix has the selected color,
/// whatever the strategy picks, and the certificate checks exactly that.
inline StreamResult homogenize_stream(const FamilySpec& spec, const Coloring& c,
                                      const std::function<Element(std::size_t)>& M,
                                      const ColorStrategy& strategy = majority_strategy,
                                      const StreamBudget& budget = {}) {
  if (!is_uniform(spec)) throw std::invalid_argument("homogenize_stream needs a uniform family");
  std::vector<Element> ground;
  for (std::size_t i = 0; i < budget.horizon; ++i) {
    Element x = M(i);
    if (x == 0 || (!ground.empty() && x <= ground.back()))
      throw std::invalid_argument("M must be a strictly increasing sequence of positive naturals");
    ground.push_back(x);
  }
  StreamResult result;
  detail::StreamHomogenizer h(c, strategy, budget.max_nodes);
  auto& table = OrdinalTable::local();
  detail::StreamHomogenizer::Section top = [&](Element m) -> std::optional<OrdinalTable::Id> {
    auto z = section_ordinal(spec, m);
    if (!z) return std::nullopt;
    return table.intern(*z);
  };
  const bool trivial = spec.kind == FamilyKind::kA && spec.param.is_zero();
  std::vector<Element> prefix;
  try {
    auto out = h.run(top, trivial, prefix, ground, budget.max_prefix);
    if (trivial) out.kept.resize(std::min(out.kept.size(), budget.max_prefix));
    result.prefix = FiniteSet(std::move(out.kept));
    result.color = out.color;
    result.picks = std::move(out.picks);
  } catch (const detail::StreamHomogenizer::BudgetExceeded&) {
    result.status = StreamStatus::kBudgetExhausted;
    result.nodes = h.nodes();
    return result;
  }
  result.nodes = h.nodes();
  Certificate cert;
  cert.kind = CertificateKind::kHomogeneous;
  cert.witness = result.prefix;
  cert.family = to_string(spec);
  cert.coloring = c.name;
  cert.color = result.color;
  cert.window = ground.empty() ? Window(1, 1) : Window::over(ground);
  result.certificate = seal(std::move(cert));
  return result;
}

// ---------------------------------------------------------------------------
// Sperner refinement

/// Color 1 for members of f with no proper subset in f, 2 otherwise.
inline Coloring minimal_member_coloring(const Family& f) {
  return {"minimal-member:" + f.name, 2, [f](SetView s) -> std::uint32_t {
            if (s.size() > 24) throw std::length_error("minimal-member coloring: set too large");
            const std::uint32_t n = static_cast<std::uint32_t>(s.size());
            std::vector<Element> sub;
            for (std::uint32_t mask = 0; mask + 1 < (1u << n); ++mask) {
              sub.clear();
              for (std::uint32_t i = 0; i < n; ++i)
                if (mask & (1u << i)) sub.push_back(s[i]);
              if (f.contains(sub)) return 2;
            }
            return 1;
          }};
}

/// L of size target on which the family is Sperner, found by homogenizing
/// the minimal-member coloring towards color 1.
inline std::optional<Certificate> sperner_refine(const FamilySpec& spec, const Window& w,
                                                 std::uint32_t target) {
  Family f = make_family(spec);
  auto found = detail::homogeneous_search(f, minimal_member_coloring(f), w, target, 1u);
  if (!found) return std::nullopt;
  Certificate cert;
  cert.kind = CertificateKind::kSpernerRefined;
  cert.witness = found->first;
  cert.family = to_string(spec);
  cert.window = w;
  cert.target = target;
  return seal(std::move(cert));
}

// ---------------------------------------------------------------------------
// Hereditary dichotomy

struct DichotomyHit {
  FiniteSet witness;
  bool branch_a = false;  // every subset of a member inside L is in the hereditary family
  bool branch_b = false;  // every hereditary member inside L is a proper initial segment
};

namespace detail {

inline Family closure_of(const Family& f) { return subset_closure_family(f); }

/// Lexicographic search for L of size target keeping at least one wanted
/// branch alive; new sets are only those whose maximum is the element just
/// added.
inline std::optional<DichotomyHit> dichotomy_search(const Family& h, const Family& spec,
                                                    const Window& w, std::uint32_t target,
                                                    bool want_a, bool want_b) {
  const std::vector<Element> g = w.elements();
  if (target > g.size()) return std::nullopt;
  std::optional<Family> closure;
  if (want_a) closure = closure_of(spec);
  std::vector<Element> L;
  auto branch_a = [&](Element x) {
    return for_each_member_with_max(*closure, L, x, [&](SetView s) { return h.contains(s); });
  };
  auto branch_b = [&](Element x) {
    return for_each_member_with_max(h, L, x, [&](SetView s) {
      return spec.contains_prefix(s) && !spec.contains(s);
    });
  };
  // Sets with no elements are checked once, before the search.
  bool a0 = want_a && (!closure->contains(SetView{}) || h.contains(SetView{}));
  bool b0 = want_b && (!h.contains(SetView{}) ||
                       (spec.contains_prefix(SetView{}) && !spec.contains(SetView{})));
  std::optional<DichotomyHit> hit;
  auto rec = [&](auto&& self, bool a, bool b, std::size_t start) -> bool {
    if (L.size() == target) {
      hit = DichotomyHit{FiniteSet(L), a, b};
      return true;
    }
    for (std::size_t i = start; i + (target - L.size()) <= g.size(); ++i) {
      Element x = g[i];
      bool na = a && branch_a(x);
      bool nb = b && branch_b(x);
      if (!na && !nb) continue;
      L.push_back(x);
      if (self(self, na, nb, i + 1)) return true;
      L.pop_back();
    }
    return false;
  };
  if (!a0 && !b0) return std::nullopt;
  rec(rec, a0, b0, 0);
  return hit;
}

inline void require_hereditary(const Family& h, const Window& w) {
  auto g = w.elements();
  if (g.size() > 12) g.resize(12);
  if (auto bad = hereditary_violation(h, g))
    throw std::invalid_argument(h.name + " is not hereditary: " + to_string(bad->first) +
                                " is a member but " + to_string(bad->second) + " is not");
}

inline Certificate dichotomy_certificate(CertificateKind kind, const FiniteSet& L,
                                         const FamilySpec& h, const FamilySpec& spec,
                                         const Window& w, std::uint32_t target) {
  Certificate cert;
  cert.kind = kind;
  cert.witness = L;
  cert.family = to_string(spec);
  cert.hereditary = to_string(h);
  cert.window = w;
  cert.target = target;
  return seal(std::move(cert));
}

}  // namespace detail

/// Searches for L of size target with either every subset of a spec member
/// inside L in h (branch A), or every h-member inside L a proper initial
/// segment of a spec member (branch B). Returns the certificates for the
/// lexicographically first L on which some branch holds: one, or two when
/// both hold there. Empty if the window is exhausted.
inline std::vector<Certificate> hereditary_dichotomy(const FamilySpec& h, const FamilySpec& spec,
                                                     const Window& w, std::uint32_t target) {
  Family hf = make_family(h);
  detail::require_hereditary(hf, w);
  auto hit = detail::dichotomy_search(hf, make_family(spec), w, target, true, true);
  std::vector<Certificate> out;
  if (!hit) return out;
  if (hit->branch_a)
    out.push_back(detail::dichotomy_certificate(CertificateKind::kDichotomyBranchA, hit->witness,
                                                h, spec, w, target));
  if (hit->branch_b)
    out.push_back(detail::dichotomy_certificate(CertificateKind::kDichotomyBranchB, hit->witness,
                                                h, spec, w, target));
  return out;
}

/// For xi1 < xi2: L on which every A_xi1 member is a proper initial segment
/// of an A_xi2 member.
inline std::optional<Certificate> rank_separation(const Ordinal& xi1, const Ordinal& xi2,
                                                  const Window& w, std::uint32_t target) {
  if (compare(xi1, xi2) >= 0)
    throw std::invalid_argument("rank_separation needs xi1 < xi2, got " + to_string(xi1) +
                                " and " + to_string(xi2));
  auto lower = FamilySpec::A(xi1), upper = FamilySpec::A(xi2);
  auto hit = detail::dichotomy_search(make_family(lower), make_family(upper), w, target, false,
                                      true);
  if (!hit) return std::nullopt;
  return detail::dichotomy_certificate(CertificateKind::kDichotomyBranchB, hit->witness, lower,
                                       upper, w, target);
}

// ---------------------------------------------------------------------------
// Chains

/// The lexicographically first t of size depth in the window all of whose
/// nonempty initial segments are in h; its prefixes form the chain.
inline std::optional<Certificate> detect_chain(const FamilySpec& h, const Window& w,
                                               std::uint32_t depth) {
  Family hf = make_family(h);
  const std::vector<Element> g = w.elements();
  std::vector<Element> t;
  auto rec = [&](auto&& self, std::size_t start) -> bool {
    if (t.size() == depth) return true;
    for (std::size_t i = start; i + (depth - t.size()) <= g.size(); ++i) {
      t.push_back(g[i]);
      if (hf.contains(t) && self(self, i + 1)) return true;
      t.pop_back();
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  Certificate cert;
  cert.kind = CertificateKind::kChain;
  cert.witness = FiniteSet(t);
  cert.hereditary = to_string(h);
  cert.window = w;
  cert.target = depth;
  return seal(std::move(cert));
}

// ---------------------------------------------------------------------------
// Transfer to the generalized Schreier families

namespace detail {

/// Inside `ground`, finds N of size target with F_xi members inside N all
/// proper initial segments of members of the family {m} u s, s in B_xi,
/// and returns N minus its first two elements.
inline std::optional<FiniteSet> shifted_transfer_set(const Ordinal& xi, const Window& ground,
                                                     std::uint32_t target) {
  if (target < 3) throw std::invalid_argument("transfer needs a target of at least 3");
  Family f = make_family(FamilySpec::F(xi));
  Family lifted = make_family(FamilySpec::A(add(omega_power(xi), Ordinal(1))));
  auto hit = dichotomy_search(f, lifted, ground, target, false, true);
  if (!hit) return std::nullopt;
  const auto& N = hit->witness.elements();
  return FiniteSet(std::vector<Element>(N.begin() + 2, N.end()));
}

inline Certificate transfer_certificate(const Ordinal& xi, const FiniteSet& L, const Window& w,
                                        std::string hereditary) {
  Certificate cert;
  cert.kind = CertificateKind::kTransfer;
  cert.witness = L;
  cert.xi = to_string(xi);
  cert.hereditary = std::move(hereditary);
  cert.window = w;
  cert.target = static_cast<std::uint32_t>(L.size());
  return seal(std::move(cert));
}

}  // namespace detail

/// L in the window with F_xi(L) inside the initial-segment closure of B_xi,
/// itself inside F_xi on the window. N has `target` elements (0: the whole
/// window) and L drops the first two.
inline std::optional<Certificate> schreier_transfer(const Ordinal& xi, const Window& w,
                                                    std::uint32_t target = 0) {
  if (target == 0) target = static_cast<std::uint32_t>(w.elements().size());
  auto L = detail::shifted_transfer_set(xi, w, target);
  if (!L) return std::nullopt;
  return detail::transfer_certificate(xi, *L, w, "");
}

struct TransferPlan {
  IndexBranch branch = IndexBranch::kFirst;
  bool lifted = false;
};

namespace detail {

/// F u {m} lifted: {empty} together with {m} u s for s in F and m < s.
inline Family lift_family(const Family& f) {
  Family out;
  out.name = "lift:" + f.name;
  out.hereditary = true;
  out.contains = [f](SetView s) { return s.empty() || f.contains(s.subspan(1)); };
  out.contains_prefix = out.contains;
  out.contains_subset = out.contains;
  return out;
}

inline std::optional<FiniteSet> first_branch_transfer(const Family& h, const Ordinal& xi,
                                                      const Window& w, std::uint32_t target) {
  // N with every subset of a B_xi member inside N in h, then the shifted
  // transfer inside N.
  auto hit = dichotomy_search(h, make_family(FamilySpec::B(xi)), w, target, true, false);
  if (!hit) return std::nullopt;
  return shifted_transfer_set(xi, Window::over(hit->witness), target);
}

}  // namespace detail

/// For a hereditary family h whose index is at least w^xi + 1, finds L with
/// F_xi(L) inside h. Above the boundary the first branch of the dichotomy
/// against B_xi applies directly; at the boundary h is lifted by one element
/// first and two more elements are dropped at the end. `sigma` overrides the
/// symbolic index (for families without one, such as `all`).
inline std::optional<Certificate> large_index_transfer(const FamilySpec& h, const Ordinal& xi,
                                                       const Window& w, std::uint32_t target,
                                                       std::optional<Ordinal> sigma = {},
                                                       TransferPlan* plan = nullptr) {
  Ordinal s = sigma ? *sigma : symbolic_index(h);
  IndexBranch branch = index_compare(s, omega_power(xi));
  if (branch == IndexBranch::kSecond)
    throw std::invalid_argument("index " + to_string(s) + " of " + to_string(h) +
                                " is below w^" + to_string(xi) + " + 1");
  Family hf = make_family(h);
  detail::require_hereditary(hf, w);
  std::optional<FiniteSet> L;
  bool lifted = branch == IndexBranch::kBoundary;
  if (!lifted) {
    L = detail::first_branch_transfer(hf, xi, w, target);
  } else {
    L = detail::first_branch_transfer(detail::lift_family(hf), xi, w, target);
    if (L && L->size() >= 2) L = FiniteSet(std::vector<Element>(L->begin() + 2, L->end()));
  }
  if (plan) *plan = {branch, lifted};
  if (!L) return std::nullopt;
  return detail::transfer_certificate(xi, *L, w, to_string(h));
}

/// Transfer under the density assumption that every infinite L carries a
/// member of h in B_xi, which no window can confirm. B_xi is homogenized for
/// membership in h towards "inside h"; then the shifted transfer runs inside
/// the result. Returns nullopt if the window contradicts the assumption or
/// is exhausted.
inline std::optional<Certificate> assume_dense_transfer(const FamilySpec& h, const Ordinal& xi,
                                                        const Window& w, std::uint32_t target) {
  Family hf = make_family(h);
  detail::require_hereditary(hf, w);
  Coloring in_h{"member-of:" + hf.name, 2,
                [hf](SetView s) -> std::uint32_t { return hf.contains(s) ? 1 : 2; }};
  auto N = detail::homogeneous_search(make_family(FamilySpec::B(xi)), in_h, w, target, 1u);
  if (!N) return std::nullopt;
  auto L = detail::shifted_transfer_set(xi, Window::over(N->first), target);
  if (!L) return std::nullopt;
  return detail::transfer_certificate(xi, *L, w, to_string(h));
}

}  // namespace schreier

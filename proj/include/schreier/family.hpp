#pragma once

// Families of finite sets given by predicates, and the windowed enumeration
// every other module builds on.

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schreier/finite_set.hpp"

namespace schreier {

using StateId = std::uint32_t;
inline constexpr StateId kDeadState = std::numeric_limits<StateId>::max();

/// Incremental membership: the state reached after reading a prefix in
/// increasing order. `next` returns kDeadState once no member can extend the
/// prefix, so a DFS driven by it visits exactly the initial-segment closure.
struct PrefixAutomaton {
  std::function<StateId()> start;
  std::function<StateId(StateId, Element)> next;
  std::function<bool(StateId)> accepting;
  /// Optional lower bound on the elements still needed to reach a member;
  /// lets enumeration skip branches that cannot finish inside the window.
  std::function<std::uint32_t(StateId)> min_more;
};

/// A family of finite subsets of the naturals.
///
/// `contains` is mandatory. `contains_prefix` decides the initial-segment
/// closure (is the set an initial segment of some member, possibly itself);
/// when present it must be monotone under initial segments and true on every
/// member. `contains_subset` decides the subset closure. `hereditary` declares
/// that `contains` is closed under subsets, which lets enumeration prune on
/// `contains` alone.
struct Family {
  std::string name;
  std::function<bool(SetView)> contains;
  std::function<bool(SetView)> contains_prefix;
  std::function<bool(SetView)> contains_subset;
  bool hereditary = false;
  std::shared_ptr<const PrefixAutomaton> automaton;
};

/// Family with an explicit member list, mostly for tests and fixtures.
inline Family explicit_family(std::string name, std::vector<FiniteSet> members) {
  auto data = std::make_shared<std::set<FiniteSet>>(members.begin(), members.end());
  Family f;
  f.name = std::move(name);
  f.contains = [data](SetView s) { return data->count(FiniteSet(s)) > 0; };
  f.contains_prefix = [data](SetView s) {
    for (const auto& m : *data)
      if (is_initial_segment(s, m)) return true;
    return false;
  };
  f.contains_subset = [data](SetView s) {
    for (const auto& m : *data)
      if (is_subset(s, m)) return true;
    return false;
  };
  return f;
}

/// Largest ground set on which an unpruned family is enumerated by brute force.
inline constexpr std::size_t kMaxUnprunedGround = 24;

namespace detail {

template <class Visit>
bool dfs_automaton(const PrefixAutomaton& a, const std::vector<Element>& g, std::size_t from,
                   StateId state, std::vector<Element>& stack, Visit& visit) {
  for (std::size_t i = from; i < g.size(); ++i) {
    StateId nxt = a.next(state, g[i]);
    if (nxt == kDeadState) continue;
    if (a.min_more && a.min_more(nxt) > g.size() - i - 1) continue;
    stack.push_back(g[i]);
    if (a.accepting(nxt) && !visit(SetView(stack))) return false;
    if (!dfs_automaton(a, g, i + 1, nxt, stack, visit)) return false;
    stack.pop_back();
  }
  return true;
}

template <class Prune, class Visit>
bool dfs_predicate(const Family& f, const Prune& keep, const std::vector<Element>& g,
                   std::size_t from, std::vector<Element>& stack, Visit& visit) {
  for (std::size_t i = from; i < g.size(); ++i) {
    stack.push_back(g[i]);
    SetView cur(stack);
    if (keep(cur)) {
      if (f.contains(cur) && !visit(cur)) return false;
      if (!dfs_predicate(f, keep, g, i + 1, stack, visit)) return false;
    }
    stack.pop_back();
  }
  return true;
}

}  // namespace detail

/// Visits every member of `f` whose elements all lie in the window, in
/// lexicographic (depth-first) order. `visit(SetView)` returns false to stop.
/// Returns false if stopped early.
template <class Visit>
bool for_each_member(const Family& f, const Window& w, Visit&& visit) {
  const std::vector<Element> g = w.elements();
  std::vector<Element> stack;
  if (f.automaton) {
    const auto& a = *f.automaton;
    StateId s0 = a.start();
    if (s0 == kDeadState) return true;
    if (a.accepting(s0) && !visit(SetView(stack))) return false;
    return detail::dfs_automaton(a, g, 0, s0, stack, visit);
  }
  if (f.contains(SetView(stack)) && !visit(SetView(stack))) return false;
  if (f.contains_prefix) {
    if (!f.contains_prefix(SetView(stack))) return true;
    return detail::dfs_predicate(f, f.contains_prefix, g, 0, stack, visit);
  }
  if (f.hereditary) return detail::dfs_predicate(f, f.contains, g, 0, stack, visit);
  if (g.size() > kMaxUnprunedGround)
    throw std::length_error("family '" + f.name +
                            "' has no prefix test; window too large to enumerate");
  auto all = [](SetView) { return true; };
  return detail::dfs_predicate(f, all, g, 0, stack, visit);
}

/// Members inside the window in length-lexicographic order.
inline std::vector<FiniteSet> enumerate(const Family& f, const Window& w) {
  std::vector<FiniteSet> out;
  for_each_member(f, w, [&](SetView s) {
    out.emplace_back(s);
    return true;
  });
  std::stable_sort(out.begin(), out.end(), LengthLex{});
  return out;
}

inline std::size_t count_members(const Family& f, const Window& w) {
  std::size_t n = 0;
  for_each_member(f, w, [&](SetView) {
    ++n;
    return true;
  });
  return n;
}

/// Outcome of a pairwise family check; `witness` is (smaller, larger).
struct PairCheck {
  bool ok = true;
  std::optional<std::pair<FiniteSet, FiniteSet>> witness;
};

/// No member inside the window is a proper initial segment of another.
/// Depth-first order visits every prefix of a set before the set itself, so
/// keeping the chain of members on the current branch is enough.
inline PairCheck check_thin(const Family& f, const Window& w) {
  PairCheck result;
  std::vector<FiniteSet> chain;
  for_each_member(f, w, [&](SetView s) {
    while (!chain.empty() && !is_proper_initial_segment(chain.back(), s)) chain.pop_back();
    if (!chain.empty()) {
      result.ok = false;
      result.witness.emplace(chain.back(), FiniteSet(s));
      return false;
    }
    chain.emplace_back(s);
    return true;
  });
  return result;
}

/// No member inside the window is a proper subset of another. Reports the
/// first violating pair with both sides taken in length-lexicographic order.
inline PairCheck check_sperner(const Family& f, const Window& w) {
  auto members = enumerate(f, w);
  const bool use_masks = w.hi < 64;
  std::vector<std::uint64_t> masks;
  if (use_masks) {
    masks.reserve(members.size());
    for (const auto& m : members) {
      std::uint64_t b = 0;
      for (Element x : m) b |= std::uint64_t{1} << x;
      masks.push_back(b);
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (members[j].size() <= members[i].size()) continue;
      bool sub = use_masks ? (masks[i] & ~masks[j]) == 0 : is_subset(members[i], members[j]);
      if (sub) return {false, std::make_pair(members[i], members[j])};
    }
  }
  return {};
}

/// Initial segments of members inside the window (the window caveat: only
/// members lying wholly inside the window count as witnesses).
inline std::vector<FiniteSet> star_closure(const Family& f, const Window& w) {
  std::set<FiniteSet, LengthLex> out;
  for_each_member(f, w, [&](SetView s) {
    for (std::size_t k = 0; k <= s.size(); ++k) out.emplace(s.first(k));
    return true;
  });
  return {out.begin(), out.end()};
}

/// Subsets of members inside the window, under the same caveat.
inline std::vector<FiniteSet> down_closure(const Family& f, const Window& w) {
  std::set<FiniteSet, LengthLex> out;
  for_each_member(f, w, [&](SetView s) {
    if (s.size() > 20) throw std::length_error("down_closure: member too large to expand");
    const std::uint32_t n = static_cast<std::uint32_t>(s.size());
    std::vector<Element> sub;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      sub.clear();
      for (std::uint32_t i = 0; i < n; ++i)
        if (mask & (1u << i)) sub.push_back(s[i]);
      out.emplace(std::move(sub));
      sub = {};
    }
    return true;
  });
  return {out.begin(), out.end()};
}

/// Checks `contains` against the subset-closure on all subsets of `within`
/// (hereditary families only). Returns a member with a non-member subset.
inline std::optional<std::pair<FiniteSet, FiniteSet>> hereditary_violation(const Family& f,
                                                                           SetView within) {
  if (within.size() > 24) throw std::length_error("hereditary check: set too large");
  const std::uint32_t n = static_cast<std::uint32_t>(within.size());
  std::vector<Element> s;
  auto build = [&](std::uint32_t mask) {
    s.clear();
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(within[i]);
    return FiniteSet(s);
  };
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    FiniteSet big = build(mask);
    if (!f.contains(big)) continue;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      FiniteSet small = build(mask & ~(1u << i));
      if (!f.contains(small)) return std::make_pair(big, small);
    }
  }
  return std::nullopt;
}

}  // namespace schreier

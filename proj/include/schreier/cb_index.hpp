#pragma once

// Strong Cantor-Bendixson rank and index: exact values for closures of the
// uniform families, and a finite-rank brute force driven by an eventual
// membership probe.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schreier/family.hpp"
#include "schreier/finite_set.hpp"
#include "schreier/ordinal.hpp"
#include "schreier/uniform_system.hpp"

namespace schreier {

/// Rank of s in the derivative hierarchy of the subset closure of A_xi: the
/// ordinal left after reading s through the system recursion. Requires s to
/// be an initial segment of a member.
inline Ordinal symbolic_rank(const Ordinal& xi, SetView s) {
  auto& t = OrdinalTable::local();
  auto id = t.intern(xi);
  for (Element x : s) {
    if (id == OrdinalTable::kZero)
      throw std::invalid_argument(to_string(s) + " is not an initial segment of a member of A:" +
                                  to_string(xi));
    id = t.step(id, x);
  }
  return t.get(id);
}

/// The same rank for any uniform family: the first element selects the
/// section, the rest is read through the system.
inline Ordinal symbolic_rank(const FamilySpec& spec, SetView s) {
  if (!is_uniform(spec)) throw std::invalid_argument("no symbolic rank for " + to_string(spec));
  if (s.empty()) return uniformity(spec);
  auto z = section_ordinal(spec, s[0]);
  if (!z)
    throw std::invalid_argument(to_string(s) + " is not an initial segment of a member of " +
                                to_string(spec));
  return symbolic_rank(*z, s.subspan(1));
}

/// Index of the subset closure of a uniform family (xi + 1 for a
/// xi-uniform family), or of F_a (w^a + 1). `down:X` is read as the closure
/// of X.
inline Ordinal symbolic_index(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kF:
      return add(omega_power(spec.param), Ordinal(1));
    case FamilyKind::kDown:
      return symbolic_index(*spec.inner);
    default:
      break;
  }
  if (!is_uniform(spec))
    throw std::invalid_argument("no symbolic index for " + to_string(spec));
  return add(uniformity(spec), Ordinal(1));
}

/// Raised when the eventual-membership probe gives different answers at its
/// sample points.
class ProbeInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite ranks for the members of a hereditary family inside a window.
/// Non-members are absent. `index` is rank(empty) + 1 when it was reached
/// within the step budget.
struct RankTable {
  std::map<FiniteSet, std::uint32_t, LengthLex> rank;
  std::optional<std::uint32_t> index;
};

namespace detail {

class DerivativeProbe {
 public:
  DerivativeProbe(const Family& f, Element horizon, std::uint32_t steps)
      : f_(f), horizon_(horizon), steps_(steps) {}

  // -1 for non-members; nullopt when the rank exceeds the step budget.
  std::optional<std::int64_t> rank(const FiniteSet& s, std::uint32_t depth) {
    if (!f_.contains(s)) return -1;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    if (depth > steps_) return std::nullopt;
    // A survives a derivative step iff A u {m} survives the previous one for
    // all but finitely many m; we read the eventual value at the probe and
    // confirm it at two later points.
    Element p = std::max<Element>(horizon_, s.empty() ? 1 : s.max() + 1);
    std::optional<std::int64_t> r;
    for (Element m : {p, p + 1, 2 * p}) {
      auto sub = rank(s.with(m), depth + 1);
      if (!sub) return std::nullopt;
      if (r && *r != *sub)
        throw ProbeInconsistency("membership of " + to_string(s) + " u {m} in " + f_.name +
                                 " is not constant for m >= " + std::to_string(p) +
                                 ": rank at m=" + std::to_string(p) + " is " +
                                 std::to_string(*r) + ", at m=" + std::to_string(m) + " is " +
                                 std::to_string(*sub));
      r = sub;
    }
    std::int64_t out = *r + 1;
    memo_.emplace(s, out);
    return out;
  }

 private:
  const Family& f_;
  Element horizon_;
  std::uint32_t steps_;
  std::map<FiniteSet, std::int64_t> memo_;
};

}  // namespace detail

/// Iterates the strong derivative on the members of a hereditary family
/// inside the window. The family must be defined on all naturals (the probe
/// looks past the window), with membership of A u {m} constant for
/// m >= horizon; horizon 0 means w.hi. Ranks above `steps` are left out.
inline RankTable brute_derivative(const Family& f, const Window& w, std::uint32_t steps,
                                  Element horizon = 0) {
  detail::DerivativeProbe probe(f, horizon ? horizon : w.hi, steps);
  RankTable table;
  for_each_member(f, w, [&](SetView s) {
    if (auto r = probe.rank(FiniteSet(s), 0); r && *r >= 0)
      table.rank.emplace(FiniteSet(s), static_cast<std::uint32_t>(*r));
    return true;
  });
  if (auto it = table.rank.find(FiniteSet{}); it != table.rank.end())
    table.index = it->second + 1;
  else if (!f.contains(SetView{}))
    table.index = 0;
  return table;
}

enum class IndexBranch { kFirst, kSecond, kBoundary };

/// Which alternative of the hereditary dichotomy is forced for a family of
/// index sigma against a xi-uniform family: the first if xi + 1 < sigma, the
/// second if sigma < xi + 1, and either at equality.
inline IndexBranch index_compare(const Ordinal& sigma, const Ordinal& xi) {
  auto c = compare(add(xi, Ordinal(1)), sigma);
  if (c < 0) return IndexBranch::kFirst;
  if (c > 0) return IndexBranch::kSecond;
  return IndexBranch::kBoundary;
}

inline const char* to_string(IndexBranch b) {
  switch (b) {
    case IndexBranch::kFirst:
      return "first";
    case IndexBranch::kSecond:
      return "second";
    case IndexBranch::kBoundary:
      return "boundary";
  }
  return "?";
}

}  // namespace schreier

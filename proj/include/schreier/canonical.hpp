#pragma once

// Canonical representation of a finite set with respect to a thin family,
// and the prefix trichotomy that comes with it.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schreier/family.hpp"
#include "schreier/finite_set.hpp"
#include "schreier/uniform_system.hpp"

namespace schreier {

/// Raised when a family does not behave like a uniform family on the input:
/// two prefixes of one set are members, or a leftover is neither a member
/// nor an initial segment of one.
class FamilyContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A = s_1 u ... u s_n u tail with s_1 < ... < s_n < tail, every s_i a member
/// and tail an initial segment of a member that is not itself a member. The
/// type is n; tail is empty when A ends on a block boundary.
struct CanonicalRep {
  std::vector<FiniteSet> blocks;
  FiniteSet tail;

  std::size_t type() const { return blocks.size(); }
  bool operator==(const CanonicalRep&) const = default;
};

namespace detail {

/// Length of the member prefix of s, or 0 if there is none. Throws if two
/// prefixes are members.
inline std::size_t member_prefix_length(const Family& f, SetView s) {
  std::size_t found = 0;
  for (std::size_t k = 1; k <= s.size(); ++k) {
    if (!f.contains(s.first(k))) continue;
    if (found)
      throw FamilyContractError("family " + f.name + " is not thin: " +
                                to_string(s.first(found)) + " and " + to_string(s.first(k)) +
                                " are both members");
    found = k;
  }
  return found;
}

inline void require_prefix_test(const Family& f) {
  if (!f.contains_prefix)
    throw FamilyContractError("family " + f.name + " has no initial-segment test");
}

}  // namespace detail

/// Greedy left-to-right decomposition; thinness makes every choice forced.
inline CanonicalRep canonical_rep(const Family& f, SetView A) {
  if (A.empty()) throw std::invalid_argument("canonical_rep needs a nonempty set");
  detail::require_prefix_test(f);
  CanonicalRep rep;
  SetView rest = A;
  while (!rest.empty()) {
    std::size_t k = detail::member_prefix_length(f, rest);
    if (k == 0) break;
    rep.blocks.emplace_back(rest.first(k));
    rest = rest.subspan(k);
  }
  if (!rest.empty()) {
    if (!f.contains_prefix(rest))
      throw FamilyContractError("leftover " + to_string(rest) +
                                " is not an initial segment of a member of " + f.name);
    rep.tail = FiniteSet(rest);
  }
  return rep;
}

inline CanonicalRep canonical_rep(const FamilySpec& spec, SetView A) {
  if (!is_uniform(spec) && spec.kind != FamilyKind::kCustom)
    throw std::invalid_argument("canonical_rep needs a uniform family, got " + to_string(spec));
  return canonical_rep(make_family(spec), A);
}

enum class TrichotomyKind { kProperPrefixOfMember, kExtendsMember };

/// Either A is a proper initial segment of a member, or some member is an
/// initial segment of A (A itself included); `witness` is that member.
struct Trichotomy {
  TrichotomyKind kind = TrichotomyKind::kProperPrefixOfMember;
  FiniteSet witness;
};

inline Trichotomy trichotomy(const Family& f, SetView A) {
  if (A.empty()) throw std::invalid_argument("trichotomy needs a nonempty set");
  detail::require_prefix_test(f);
  if (std::size_t k = detail::member_prefix_length(f, A))
    return {TrichotomyKind::kExtendsMember, FiniteSet(A.first(k))};
  if (!f.contains_prefix(A))
    throw FamilyContractError(to_string(A) + " neither extends nor starts a member of " + f.name);
  return {TrichotomyKind::kProperPrefixOfMember, {}};
}

inline Trichotomy trichotomy(const FamilySpec& spec, SetView A) {
  return trichotomy(make_family(spec), A);
}

/// A pair s, t of members inside the window with s a proper subset of t.
inline std::optional<std::pair<FiniteSet, FiniteSet>> sperner_witness(const FamilySpec& spec,
                                                                      const Window& w) {
  return check_sperner(make_family(spec), w).witness;
}

}  // namespace schreier

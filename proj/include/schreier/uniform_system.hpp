#pragma once

// The system (A_xi), the Schreier-type families B_a = A_{w^a}, the generalized
// Schreier families F_a, the named example families, and the family literal
// grammar used by the CLI and certificates.

#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "schreier/family.hpp"
#include "schreier/finite_set.hpp"
#include "schreier/ordinal.hpp"

namespace schreier {

/// Interns ordinals and memoizes descend(x, m), so that walking the system
/// recursion costs a table lookup per element. One table per thread; ids are
/// only meaningful within the thread that produced them.
class OrdinalTable {
 public:
  using Id = std::uint32_t;
  static constexpr Id kZero = 0;

  static OrdinalTable& local() {
    thread_local OrdinalTable table;
    return table;
  }

  Id intern(const Ordinal& x) {
    auto it = index_.find(x);
    if (it != index_.end()) return it->second;
    Id id = static_cast<Id>(ordinals_.size());
    ordinals_.push_back(x);
    index_.emplace(x, id);
    dense_steps_.emplace_back();
    min_more_.push_back(lower_bound_elements(x));
    return id;
  }

  const Ordinal& get(Id id) const { return ordinals_.at(id); }

  /// descend(get(id), m); id must not be kZero.
  Id step(Id id, Element m) {
    if (m < kDense) {
      auto& row = dense_steps_[id];
      if (row.empty()) row.assign(kDense, kUnset);
      if (row[m] != kUnset) return row[m];
      Id out = intern(descend(ordinals_[id], m));
      dense_steps_[id][m] = out;  // intern may have grown the table
      return out;
    }
    std::uint64_t key = (std::uint64_t{id} << 32) | m;
    auto it = sparse_steps_.find(key);
    if (it != sparse_steps_.end()) return it->second;
    Id out = intern(descend(ordinals_[id], m));
    sparse_steps_.emplace(key, out);
    return out;
  }

  /// A lower bound on how many more elements any completion needs.
  std::uint32_t min_more(Id id) const { return min_more_[id]; }

 private:
  static constexpr Element kDense = 128;
  static constexpr Id kUnset = std::numeric_limits<Id>::max();

  OrdinalTable() { intern(Ordinal()); }

  // The finite part must be consumed one element at a time, and any
  // infinite part needs at least one more.
  static std::uint32_t lower_bound_elements(const Ordinal& x) {
    std::uint64_t n = 0;
    for (const auto& t : x.terms()) n += t.exponent.is_zero() ? t.coefficient : 0;
    if (!x.is_zero() && !x.terms().front().exponent.is_zero()) n += 1;
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(n, 1u << 30));
  }

  std::deque<Ordinal> ordinals_;
  std::unordered_map<Ordinal, Id, OrdinalHash> index_;
  std::deque<std::vector<Id>> dense_steps_;
  std::unordered_map<std::uint64_t, Id> sparse_steps_;
  std::vector<std::uint32_t> min_more_;
};

// ---------------------------------------------------------------------------
// Membership in A_xi and its closures

namespace detail {

inline OrdinalTable::Id walk_member(OrdinalTable::Id id, SetView s, bool& died) {
  auto& t = OrdinalTable::local();
  died = false;
  for (Element x : s) {
    if (id == OrdinalTable::kZero) {
      died = true;
      return id;
    }
    id = t.step(id, x);
  }
  return id;
}

/// Can the elements of s (all > floor) be completed to a member of A_x by
/// inserting further elements > floor anywhere?
inline bool down_from(OrdinalTable::Id start, SetView s, Element floor) {
  auto& t = OrdinalTable::local();
  std::unordered_map<std::uint64_t, bool> memo;
  // (state, index into s, next candidate for insertion)
  auto rec = [&](auto&& self, OrdinalTable::Id id, std::size_t i, Element v) -> bool {
    if (i == s.size()) return true;
    if (id == OrdinalTable::kZero) return false;
    const Ordinal& x = t.get(id);
    if (x.is_natural()) return s.size() - i <= x.as_natural();
    if (v == s[i]) return self(self, t.step(id, s[i]), i + 1, s[i] + 1);
    std::uint64_t key = (std::uint64_t{id} << 32) | (std::uint64_t{i} << 20) | v;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool r = self(self, id, i, v + 1) || self(self, t.step(id, v), i, v + 1);
    memo.emplace(key, r);
    return r;
  };
  if (s.empty()) return true;
  if (s.size() >= (1u << 12) || s.back() >= (1u << 20))
    throw std::length_error("subset-closure test: set too large");
  return rec(rec, start, 0, floor + 1);
}

}  // namespace detail

/// s in A_xi: A_0 = {empty}; otherwise s is nonempty and s minus its minimum n
/// lies in A_{xi_n}, with xi_n the predecessor or the n-th fundamental term.
inline bool member_A(const Ordinal& xi, SetView s) {
  bool died = false;
  auto id = detail::walk_member(OrdinalTable::local().intern(xi), s, died);
  return !died && id == OrdinalTable::kZero;
}

/// s is an initial segment (possibly improper) of a member of A_xi.
inline bool member_A_star(const Ordinal& xi, SetView s) {
  bool died = false;
  detail::walk_member(OrdinalTable::local().intern(xi), s, died);
  return !died;
}

/// s is a subset of a member of A_xi. Decided exactly by trying every way of
/// inserting extra elements into the gaps of s; the state space is bounded
/// by max s, |s| and the ordinals reachable on the way.
inline bool member_A_down(const Ordinal& xi, SetView s, Element floor = 0) {
  return detail::down_from(OrdinalTable::local().intern(xi), s, floor);
}

inline bool member_B(const Ordinal& a, SetView s) { return member_A(omega_power(a), s); }
inline bool member_B_star(const Ordinal& a, SetView s) {
  return member_A_star(omega_power(a), s);
}

namespace detail {

/// Length of the longest initial segment of s in F_a (s nonempty). Members
/// of F_{b+1} split into at most min s consecutive F_b pieces, and since F_b
/// is closed under initial segments, taking the longest piece each time
/// covers the most.
inline std::size_t longest_F_prefix_finite(std::uint64_t k, SetView s) {
  if (k == 0) return 1;
  std::size_t i = 0;
  for (Element pieces = 0; i < s.size() && pieces < s[0]; ++pieces)
    i += longest_F_prefix_finite(k - 1, s.subspan(i));
  return i;
}

inline std::size_t longest_F_prefix(const Ordinal& a, SetView s) {
  if (a.is_natural()) return longest_F_prefix_finite(a.as_natural(), s);
  auto c = classify(a);
  switch (c.kind) {
    case OrdinalKind::kZero:
      return 1;
    case OrdinalKind::kSuccessor: {
      std::size_t i = 0;
      for (Element pieces = 0; i < s.size() && pieces < s[0]; ++pieces)
        i += longest_F_prefix(c.predecessor, s.subspan(i));
      return i;
    }
    case OrdinalKind::kLimit:
      break;
  }
  // Every initial segment of s has minimum s[0], so the branches allowed
  // are n <= s[0].
  std::size_t best = 0;
  for (Element n = 1; n <= s[0] && best < s.size(); ++n)
    best = std::max(best, longest_F_prefix(fundamental(a, n), s));
  return best;
}

}  // namespace detail

/// Generalized Schreier family: F_0 = singletons; F_{b+1} = unions
/// F_1 < ... < F_n of members of F_b with n <= min F_1; at a limit a,
/// s in F_a iff s in F_{a_n} for some n <= min s.
inline bool member_F(const Ordinal& a, SetView s) {
  return !s.empty() && detail::longest_F_prefix(a, s) == s.size();
}

// ---------------------------------------------------------------------------
// Family specs

enum class FamilyKind { kA, kB, kF, kExampleL, kExampleR, kExample112, kAll, kDown, kCustom };

/// Names a concrete family. `param` is xi for A, a for B and F. `inner` is
/// the family whose subset closure kDown denotes.
struct FamilySpec {
  FamilyKind kind = FamilyKind::kA;
  Ordinal param;
  std::shared_ptr<const FamilySpec> inner;
  std::shared_ptr<const Family> custom;

  static FamilySpec A(Ordinal xi) { return {FamilyKind::kA, std::move(xi), nullptr, nullptr}; }
  static FamilySpec B(Ordinal a) { return {FamilyKind::kB, std::move(a), nullptr, nullptr}; }
  static FamilySpec F(Ordinal a) { return {FamilyKind::kF, std::move(a), nullptr, nullptr}; }
  static FamilySpec example_L() { return {FamilyKind::kExampleL, {}, nullptr, nullptr}; }
  static FamilySpec example_R() { return {FamilyKind::kExampleR, {}, nullptr, nullptr}; }
  static FamilySpec example_112() { return {FamilyKind::kExample112, {}, nullptr, nullptr}; }
  static FamilySpec all() { return {FamilyKind::kAll, {}, nullptr, nullptr}; }
  static FamilySpec down(FamilySpec of) {
    return {FamilyKind::kDown, {}, std::make_shared<const FamilySpec>(std::move(of)), nullptr};
  }
  static FamilySpec custom_family(Family f) {
    return {FamilyKind::kCustom, {}, nullptr, std::make_shared<const Family>(std::move(f))};
  }
};

/// True for the families that are uniform on the naturals: A, B and the
/// three examples.
inline bool is_uniform(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kA:
    case FamilyKind::kB:
    case FamilyKind::kExampleL:
    case FamilyKind::kExampleR:
    case FamilyKind::kExample112:
      return true;
    default:
      return false;
  }
}

/// The xi for which a uniform spec is xi-uniform.
inline Ordinal uniformity(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kA:
      return spec.param;
    case FamilyKind::kB:
      return omega_power(spec.param);
    case FamilyKind::kExampleL:
    case FamilyKind::kExampleR:
      return Ordinal::omega();
    case FamilyKind::kExample112:
      return nat_multiple(Ordinal::omega(), 2);
    default:
      throw std::invalid_argument("family is not uniform");
  }
}

/// For a uniform spec L and m >= 1, the ordinal zeta with L(m) = A_zeta
/// restricted to (m, inf), or nullopt when L has no member starting at m.
inline std::optional<Ordinal> section_ordinal(const FamilySpec& spec, Element m) {
  switch (spec.kind) {
    case FamilyKind::kA:
      if (spec.param.is_zero()) return std::nullopt;
      return descend(spec.param, m);
    case FamilyKind::kB:
      return descend(omega_power(spec.param), m);
    case FamilyKind::kExampleL:  // |s| = 2 min s + 1
      return Ordinal(2 * std::uint64_t{m});
    case FamilyKind::kExampleR:  // |s| = min s
      return Ordinal(std::uint64_t{m} - 1);
    case FamilyKind::kExample112:
      if (m == 1) return Ordinal(5);
      if (m == 2) return Ordinal::omega();
      return add(Ordinal::omega(), Ordinal(m));
    default:
      throw std::invalid_argument("section_ordinal needs a uniform family");
  }
}

inline std::string to_string(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kA:
      return "A:" + to_string(spec.param);
    case FamilyKind::kB:
      return "B:" + to_string(spec.param);
    case FamilyKind::kF:
      return "F:" + to_string(spec.param);
    case FamilyKind::kExampleL:
      return "exL";
    case FamilyKind::kExampleR:
      return "exR";
    case FamilyKind::kExample112:
      return "ex112";
    case FamilyKind::kAll:
      return "all";
    case FamilyKind::kDown:
      return "down:" + to_string(*spec.inner);
    case FamilyKind::kCustom:
      return "custom:" + spec.custom->name;
  }
  return "?";
}

/// Parses `A:<ord>`, `B:<ord>`, `F:<ord>`, `exL`, `exR`, `ex112`, `all` and
/// `down:<family>`.
inline FamilySpec parse_family(std::string_view text) {
  text = detail::trim(text);
  if (text == "exL") return FamilySpec::example_L();
  if (text == "exR") return FamilySpec::example_R();
  if (text == "ex112") return FamilySpec::example_112();
  if (text == "all") return FamilySpec::all();
  if (text.starts_with("down:")) return FamilySpec::down(parse_family(text.substr(5)));
  if (text.size() > 2 && text[1] == ':') {
    Ordinal x = parse_ordinal(text.substr(2));
    switch (text[0]) {
      case 'A':
        return FamilySpec::A(std::move(x));
      case 'B':
        return FamilySpec::B(std::move(x));
      case 'F':
        return FamilySpec::F(std::move(x));
      default:
        break;
    }
  }
  throw std::invalid_argument("unknown family literal '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Membership through specs

namespace detail {

/// The automaton state before any element of a uniform spec is read.
inline constexpr StateId kRootState = kDeadState - 1;

inline StateId ordinal_step(StateId id, Element x) {
  if (id == OrdinalTable::kZero) return kDeadState;
  return OrdinalTable::local().step(id, x);
}

}  // namespace detail

inline bool uniform_member(const FamilySpec& spec, SetView s) {
  if (spec.kind == FamilyKind::kA) return member_A(spec.param, s);
  if (s.empty()) return false;
  auto z = section_ordinal(spec, s[0]);
  return z && member_A(*z, s.subspan(1));
}

inline bool uniform_member_star(const FamilySpec& spec, SetView s) {
  if (spec.kind == FamilyKind::kA) return member_A_star(spec.param, s);
  if (s.empty()) return true;
  auto z = section_ordinal(spec, s[0]);
  return z && member_A_star(*z, s.subspan(1));
}

/// s is a subset of some member: either the member starts at min s, or at
/// some smaller n whose section must absorb all of s.
inline bool uniform_member_down(const FamilySpec& spec, SetView s) {
  if (spec.kind == FamilyKind::kA) return member_A_down(spec.param, s);
  if (s.empty()) return true;
  if (auto z = section_ordinal(spec, s[0]); z && member_A_down(*z, s.subspan(1), s[0]))
    return true;
  for (Element n = 1; n < s[0]; ++n)
    if (auto z = section_ordinal(spec, n); z && member_A_down(*z, s, n)) return true;
  return false;
}

inline std::shared_ptr<const PrefixAutomaton> uniform_automaton(const FamilySpec& spec) {
  auto a = std::make_shared<PrefixAutomaton>();
  if (spec.kind == FamilyKind::kA) {
    Ordinal xi = spec.param;
    a->start = [xi] { return OrdinalTable::local().intern(xi); };
    a->next = detail::ordinal_step;
  } else {
    a->start = [] { return detail::kRootState; };
    a->next = [spec](StateId id, Element x) -> StateId {
      if (id != detail::kRootState) return detail::ordinal_step(id, x);
      auto z = section_ordinal(spec, x);
      return z ? OrdinalTable::local().intern(*z) : kDeadState;
    };
  }
  a->accepting = [](StateId id) { return id == OrdinalTable::kZero; };
  a->min_more = [](StateId id) -> std::uint32_t {
    return id == detail::kRootState ? 1 : OrdinalTable::local().min_more(id);
  };
  return a;
}

inline Family make_family(const FamilySpec& spec);

namespace detail {

inline Family hereditary_family(std::string name, std::function<bool(SetView)> contains) {
  Family f;
  f.name = std::move(name);
  f.contains = contains;
  f.contains_prefix = contains;
  f.contains_subset = std::move(contains);
  f.hereditary = true;
  return f;
}

}  // namespace detail

/// The family a spec names. Uniform specs get exact initial-segment and
/// subset closures and an enumeration automaton. F:a is used as a hereditary
/// family, so it also contains the empty set (member_F itself follows the
/// recursion and rejects it).
inline Family make_family(const FamilySpec& spec) {
  if (is_uniform(spec)) {
    Family f;
    f.name = to_string(spec);
    f.contains = [spec](SetView s) { return uniform_member(spec, s); };
    f.contains_prefix = [spec](SetView s) { return uniform_member_star(spec, s); };
    f.contains_subset = [spec](SetView s) { return uniform_member_down(spec, s); };
    f.automaton = uniform_automaton(spec);
    return f;
  }
  switch (spec.kind) {
    case FamilyKind::kF: {
      Ordinal a = spec.param;
      return detail::hereditary_family(to_string(spec), [a](SetView s) {
        return s.empty() || member_F(a, s);
      });
    }
    case FamilyKind::kAll:
      return detail::hereditary_family("all", [](SetView) { return true; });
    case FamilyKind::kDown: {
      Family inner = make_family(*spec.inner);
      if (!inner.contains_subset)
        throw std::invalid_argument("family " + inner.name + " has no subset closure");
      return detail::hereditary_family(to_string(spec), inner.contains_subset);
    }
    case FamilyKind::kCustom:
      return *spec.custom;
    default:
      break;
  }
  throw std::invalid_argument("unsupported family");
}

/// The section L(m) = {s : m < s, {m} u s in L} as a family.
inline Family section_family(const Family& f, Element m) {
  Family out;
  out.name = f.name + "(" + std::to_string(m) + ")";
  auto with_m = [m](SetView s) { return prepend(m, s); };
  auto above = [m](SetView s) { return s.empty() || s[0] > m; };
  out.contains = [f, with_m, above](SetView s) { return above(s) && f.contains(with_m(s)); };
  if (f.contains_prefix)
    out.contains_prefix = [f, with_m, above](SetView s) {
      return above(s) && f.contains_prefix(with_m(s));
    };
  if (f.hereditary) out.hereditary = true;
  if (f.automaton) {
    auto parent = f.automaton;
    auto a = std::make_shared<PrefixAutomaton>(*parent);
    a->start = [parent, m] {
      StateId s0 = parent->start();
      return s0 == kDeadState ? kDeadState : parent->next(s0, m);
    };
    out.automaton = std::move(a);
  }
  return out;
}

/// Members of the section L(m) inside the part of the window above m.
inline std::vector<FiniteSet> section(const FamilySpec& spec, Element m, const Window& w) {
  if (m == 0) throw std::invalid_argument("section index must be >= 1");
  Family sec = section_family(make_family(spec), m);
  if (m >= w.hi) return sec.contains(SetView{}) ? std::vector<FiniteSet>{FiniteSet{}}
                                                : std::vector<FiniteSet>{};
  return enumerate(sec, w.above(m));
}

// ---------------------------------------------------------------------------
// Spreading

/// The image of an index set under n -> l_n (1-based) for L = (l_1 < l_2 < ...).
inline FiniteSet spread(SetView indices, SetView L) {
  std::vector<Element> out;
  out.reserve(indices.size());
  for (Element n : indices) {
    if (n == 0 || n > L.size())
      throw std::out_of_range("spread index " + std::to_string(n) + " outside 1.." +
                              std::to_string(L.size()));
    out.push_back(L[n - 1]);
  }
  return FiniteSet(std::move(out));
}

/// Visits F_a(L): the spread of every nonempty index set in F_a on 1..|L|.
template <class Visit>
bool for_each_spread_F(const Ordinal& a, SetView L, Visit&& visit) {
  if (L.empty()) return true;
  Family f = make_family(FamilySpec::F(a));
  return for_each_member(f, Window(1, static_cast<Element>(L.size())), [&](SetView idx) {
    if (idx.empty()) return true;
    return visit(spread(idx, L));
  });
}

/// F_a(L) restricted to sets inside the window, length-lex ordered.
inline std::vector<FiniteSet> spread_F(const Ordinal& a, SetView L, const Window& w) {
  std::vector<FiniteSet> out;
  for_each_spread_F(a, L, [&](const FiniteSet& s) {
    if (w.contains(s.view())) out.push_back(s);
    return true;
  });
  std::sort(out.begin(), out.end(), LengthLex{});
  return out;
}

}  // namespace schreier

#pragma once

// Ordinals below epsilon_0 in Cantor normal form, with the fundamental
// sequences of the Schreier-type system of uniform families.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace schreier {

/// An ordinal below epsilon_0 written as w^{e_1}*c_1 + ... + w^{e_k}*c_k with
/// e_1 > ... > e_k and every c_i >= 1. The empty sum is 0.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;
  /// The natural number n.
  explicit Ordinal(std::uint64_t n);

  static Ordinal zero() { return Ordinal(); }
  static Ordinal omega();
  /// Builds from terms, rejecting anything that is not in normal form.
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_natural() const;
  /// The value as a natural number; throws std::domain_error if infinite.
  std::uint64_t as_natural() const;

  std::strong_ordering operator<=>(const Ordinal& other) const;
  bool operator==(const Ordinal& other) const;

  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  bool operator==(const Term& other) const = default;
};

enum class OrdinalKind { kZero, kSuccessor, kLimit };

struct Classification {
  OrdinalKind kind = OrdinalKind::kZero;
  /// Set only for successors.
  Ordinal predecessor;
};

std::strong_ordering compare(const Ordinal& x, const Ordinal& y);
Ordinal add(const Ordinal& x, const Ordinal& y);
Ordinal omega_power(const Ordinal& a);
/// x * p for a natural p >= 1 (the paper's coefficient-first "p x" when x is
/// a power of omega).
Ordinal nat_multiple(const Ordinal& x, std::uint64_t p);
Classification classify(const Ordinal& x);

/// The m-th member of the canonical sequence for the limit ordinal x (m >= 1).
/// Throws std::invalid_argument for zero or successor x, or m == 0.
Ordinal fundamental(const Ordinal& x, std::uint64_t m);

/// One step of the system recursion: the predecessor when x is a successor,
/// fundamental(x, m) when x is a limit. Throws on zero.
Ordinal descend(const Ordinal& x, std::uint64_t m);

/// Parses `w^{w+1}*3 + w^2 + w*2 + 5`. Exponents may be a natural, `w`, or a
/// braced/parenthesised ordinal. Terms need not be in normal form; the
/// result is the ordinal sum. Throws std::invalid_argument on bad input.
Ordinal parse_ordinal(std::string_view text);
std::string to_string(const Ordinal& x);

struct OrdinalHash {
  std::size_t operator()(const Ordinal& x) const { return x.hash(); }
};

// ---------------------------------------------------------------------------
// Implementation

inline Ordinal::Ordinal(std::uint64_t n) {
  if (n > 0) terms_.push_back(Term{Ordinal(), n});
}

inline Ordinal Ordinal::omega() {
  Ordinal w;
  w.terms_.push_back(Term{Ordinal(1), 1});
  return w;
}

inline Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0)
      throw std::invalid_argument("ordinal term with zero coefficient");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
      throw std::invalid_argument("ordinal exponents must strictly decrease");
  }
  Ordinal out;
  out.terms_ = std::move(terms);
  return out;
}

inline bool Ordinal::is_natural() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

inline std::uint64_t Ordinal::as_natural() const {
  if (!is_natural()) throw std::domain_error("ordinal is not finite");
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

inline std::strong_ordering Ordinal::operator<=>(const Ordinal& other) const {
  const std::size_t n = std::min(terms_.size(), other.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = terms_[i];
    const auto& b = other.terms_[i];
    if (auto c = a.exponent <=> b.exponent; c != 0) return c;
    if (auto c = a.coefficient <=> b.coefficient; c != 0) return c;
  }
  return terms_.size() <=> other.terms_.size();
}

inline bool Ordinal::operator==(const Ordinal& other) const {
  return terms_ == other.terms_;
}

inline std::size_t Ordinal::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ terms_.size();
  for (const auto& t : terms_) {
    h ^= t.exponent.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(t.coefficient) + 0x9e3779b97f4a7c15ull +
         (h << 6) + (h >> 2);
  }
  return h;
}

inline std::strong_ordering compare(const Ordinal& x, const Ordinal& y) {
  return x <=> y;
}

inline Ordinal add(const Ordinal& x, const Ordinal& y) {
  if (y.is_zero()) return x;
  const auto& lead = y.terms().front();
  std::vector<Ordinal::Term> out;
  out.reserve(x.terms().size() + y.terms().size());
  std::uint64_t carry = 0;
  for (const auto& t : x.terms()) {
    if (t.exponent > lead.exponent) {
      out.push_back(t);
    } else if (t.exponent == lead.exponent) {
      carry = t.coefficient;
      break;
    } else {
      break;
    }
  }
  bool first = true;
  for (const auto& t : y.terms()) {
    out.push_back(t);
    if (first) {
      out.back().coefficient += carry;
      first = false;
    }
  }
  return Ordinal::from_terms(std::move(out));
}

inline Ordinal omega_power(const Ordinal& a) {
  return Ordinal::from_terms({Ordinal::Term{a, 1}});
}

inline Ordinal nat_multiple(const Ordinal& x, std::uint64_t p) {
  if (p == 0) throw std::invalid_argument("nat_multiple needs p >= 1");
  if (x.is_zero()) return x;
  auto terms = x.terms();
  terms.front().coefficient *= p;
  return Ordinal::from_terms(std::move(terms));
}

inline Classification classify(const Ordinal& x) {
  if (x.is_zero()) return {};
  const auto& last = x.terms().back();
  if (!last.exponent.is_zero()) return {OrdinalKind::kLimit, Ordinal()};
  auto terms = x.terms();
  if (--terms.back().coefficient == 0) terms.pop_back();
  return {OrdinalKind::kSuccessor, Ordinal::from_terms(std::move(terms))};
}

namespace detail {

// (w^a)_m for a > 0.
inline Ordinal power_fundamental(const Ordinal& a, std::uint64_t m) {
  auto c = classify(a);
  if (c.kind == OrdinalKind::kSuccessor) {
    // (w^{b+1})_m = w^b*(m-1) + (w^b)_m, where (w^0)_m = (1)_m = 0.
    const Ordinal& b = c.predecessor;
    Ordinal head = m > 1 ? nat_multiple(omega_power(b), m - 1) : Ordinal();
    if (b.is_zero()) return head;
    return add(head, power_fundamental(b, m));
  }
  // a limit: (w^a)_m = (w^{a_m})_m with a_m taken from the same scheme.
  Ordinal am = fundamental(a, m);
  if (am.is_zero()) return Ordinal();
  return power_fundamental(am, m);
}

}  // namespace detail

inline Ordinal fundamental(const Ordinal& x, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("fundamental sequence index starts at 1");
  if (classify(x).kind != OrdinalKind::kLimit)
    throw std::invalid_argument("fundamental sequence of non-limit ordinal " +
                                to_string(x));
  // x = beta + w^a * p with a > 0: x_m = beta + w^a*(p-1) + (w^a)_m.
  auto terms = x.terms();
  Ordinal a = terms.back().exponent;
  if (--terms.back().coefficient == 0) terms.pop_back();
  Ordinal prefix = Ordinal::from_terms(std::move(terms));
  return add(prefix, detail::power_fundamental(a, m));
}

inline Ordinal descend(const Ordinal& x, std::uint64_t m) {
  auto c = classify(x);
  switch (c.kind) {
    case OrdinalKind::kZero:
      throw std::invalid_argument("cannot descend from 0");
    case OrdinalKind::kSuccessor:
      return c.predecessor;
    case OrdinalKind::kLimit:
      break;
  }
  return fundamental(x, m);
}

// ---------------------------------------------------------------------------
// Text form

namespace detail {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse_all() {
    Ordinal x = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return x;
  }

 private:
  Ordinal parse_sum() {
    Ordinal total = parse_term();
    for (;;) {
      skip_ws();
      if (peek() != '+') return total;
      ++pos_;
      total = add(total, parse_term());
    }
  }

  Ordinal parse_term() {
    skip_ws();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::uint64_t n = parse_natural();
      skip_ws();
      // Coefficient-first form "2w" or "2*w^3".
      if (peek() == '*') {
        std::size_t save = pos_;
        ++pos_;
        skip_ws();
        if (peek() == 'w') return times(parse_power(), n);
        pos_ = save;
      } else if (peek() == 'w') {
        return times(parse_power(), n);
      }
      return Ordinal(n);
    }
    if (peek() == 'w') {
      Ordinal p = parse_power();
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        return times(p, parse_natural());
      }
      return p;
    }
    if (peek() == '(' || peek() == '{') return parse_group();
    fail("expected a term");
  }

  Ordinal parse_power() {
    ++pos_;  // 'w'
    skip_ws();
    if (peek() != '^') return Ordinal::omega();
    ++pos_;
    skip_ws();
    Ordinal exponent;
    if (peek() == '{' || peek() == '(') {
      exponent = parse_group();
    } else if (peek() == 'w') {
      exponent = parse_power();
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      exponent = Ordinal(parse_natural());
    } else {
      fail("expected exponent");
    }
    return omega_power(exponent);
  }

  Ordinal parse_group() {
    char open = text_[pos_++];
    char close = open == '{' ? '}' : ')';
    Ordinal x = parse_sum();
    skip_ws();
    if (peek() != close) fail("unbalanced bracket");
    ++pos_;
    return x;
  }

  std::uint64_t parse_natural() {
    std::uint64_t n = 0;
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      n = n * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected a natural number");
    return n;
  }

  static Ordinal times(const Ordinal& x, std::uint64_t n) {
    return n == 0 ? Ordinal() : nat_multiple(x, n);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const char* what) const {
    throw std::invalid_argument(std::string("bad ordinal '") + std::string(text_) +
                                "' at " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Ordinal parse_ordinal(std::string_view text) {
  return detail::OrdinalParser(text).parse_all();
}

inline std::string to_string(const Ordinal& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& t : x.terms()) {
    if (!out.empty()) out += " + ";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent != Ordinal(1)) {
      out += '^';
      if (t.exponent.is_natural() || t.exponent == Ordinal::omega())
        out += to_string(t.exponent);
      else
        out += '{' + to_string(t.exponent) + '}';
    }
    if (t.coefficient > 1) out += '*' + std::to_string(t.coefficient);
  }
  return out;
}

}  // namespace schreier

#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace schreier {

using Element = std::uint32_t;
/// Read-only view of a strictly increasing run of positive naturals.
using SetView = std::span<const Element>;

/// A finite set of positive naturals, stored as a strictly increasing sequence.
class FiniteSet {
 public:
  FiniteSet() = default;
  FiniteSet(std::initializer_list<Element> elements)
      : FiniteSet(std::vector<Element>(elements)) {}
  explicit FiniteSet(std::vector<Element> elements) : elements_(std::move(elements)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (elements_[i] == 0) throw std::invalid_argument("set elements must be >= 1");
      if (i > 0 && elements_[i] <= elements_[i - 1])
        throw std::invalid_argument("set elements must be strictly increasing");
    }
  }
  explicit FiniteSet(SetView view) : elements_(view.begin(), view.end()) {}

  /// Sorts and deduplicates arbitrary input.
  static FiniteSet from_unsorted(std::vector<Element> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return FiniteSet(std::move(elements));
  }

  SetView view() const { return elements_; }
  operator SetView() const { return elements_; }  // NOLINT
  const std::vector<Element>& elements() const { return elements_; }

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  Element min() const { return elements_.front(); }
  Element max() const { return elements_.back(); }
  Element operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(Element x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
  }

  FiniteSet prefix(std::size_t n) const {
    return FiniteSet(SetView(elements_).first(std::min(n, elements_.size())));
  }
  /// Appends x; requires x > max().
  FiniteSet with(Element x) const {
    FiniteSet out = *this;
    if (!out.elements_.empty() && x <= out.elements_.back())
      throw std::invalid_argument("with(): element must exceed the maximum");
    out.elements_.push_back(x);
    return out;
  }

  bool operator==(const FiniteSet&) const = default;
  /// Lexicographic order on the element sequences.
  std::strong_ordering operator<=>(const FiniteSet& other) const {
    return std::lexicographical_compare_three_way(
        elements_.begin(), elements_.end(), other.elements_.begin(), other.elements_.end());
  }

 private:
  std::vector<Element> elements_;
};

/// Length-first, then lexicographic.
struct LengthLex {
  bool operator()(SetView a, SetView b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
  bool operator()(const FiniteSet& a, const FiniteSet& b) const {
    return (*this)(a.view(), b.view());
  }
};

inline bool is_initial_segment(SetView s, SetView t) {
  return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

inline bool is_proper_initial_segment(SetView s, SetView t) {
  return s.size() < t.size() && is_initial_segment(s, t);
}

inline bool is_subset(SetView s, SetView t) {
  return std::includes(t.begin(), t.end(), s.begin(), s.end());
}

inline bool is_proper_subset(SetView s, SetView t) {
  return s.size() < t.size() && is_subset(s, t);
}

/// {m} u s; requires m < min s.
inline FiniteSet prepend(Element m, SetView s) {
  std::vector<Element> out;
  out.reserve(s.size() + 1);
  out.push_back(m);
  out.insert(out.end(), s.begin(), s.end());
  return FiniteSet(std::move(out));
}

inline std::string to_string(SetView s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + '}';
}

inline std::string to_string(const FiniteSet& s) { return to_string(s.view()); }

namespace detail {

inline std::vector<Element> parse_element_list(std::string_view text) {
  std::vector<Element> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip();
  while (i < text.size()) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("bad element list '" + std::string(text) + "'");
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
      if (v > 0xffffffffu) throw std::invalid_argument("element out of range");
      ++i;
    }
    out.push_back(static_cast<Element>(v));
    skip();
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses `{2,3,4}`; the braces are optional. Input must be strictly increasing.
inline FiniteSet parse_set(std::string_view text) {
  text = detail::trim(text);
  if (!text.empty() && (text.front() == '{' || text.front() == '[' || text.front() == '(')) {
    char close = text.front() == '{' ? '}' : text.front() == '[' ? ']' : ')';
    if (text.back() != close) throw std::invalid_argument("unbalanced set literal");
    text = text.substr(1, text.size() - 2);
  }
  return FiniteSet(detail::parse_element_list(text));
}

/// A finite truncation of the ground set: the naturals in [lo, hi], or an
/// explicit sorted ground list inside that range.
struct Window {
  Element lo = 1;
  Element hi = 1;
  std::vector<Element> ground;  // empty means every natural in [lo, hi]

  Window() = default;
  Window(Element lo_, Element hi_) : lo(lo_), hi(hi_) { validate(); }
  Window(Element lo_, Element hi_, std::vector<Element> ground_)
      : lo(lo_), hi(hi_), ground(std::move(ground_)) {
    validate();
  }
  /// A window whose ground set is exactly `elements`.
  static Window over(SetView elements) {
    if (elements.empty()) throw std::invalid_argument("window over an empty set");
    return Window(elements.front(), elements.back(),
                  std::vector<Element>(elements.begin(), elements.end()));
  }

  std::vector<Element> elements() const {
    if (!ground.empty()) return ground;
    std::vector<Element> out;
    out.reserve(hi - lo + 1);
    for (Element x = lo; x <= hi; ++x) out.push_back(x);
    return out;
  }

  bool contains(Element x) const {
    if (x < lo || x > hi) return false;
    return ground.empty() || std::binary_search(ground.begin(), ground.end(), x);
  }
  bool contains(SetView s) const {
    return std::all_of(s.begin(), s.end(), [&](Element x) { return contains(x); });
  }

  /// The part of the window strictly above m.
  Window above(Element m) const {
    Window w = *this;
    if (m >= hi) throw std::invalid_argument("window has nothing above " + std::to_string(m));
    w.lo = std::max<Element>(lo, m + 1);
    if (!w.ground.empty()) {
      std::erase_if(w.ground, [&](Element x) { return x <= m; });
      if (w.ground.empty()) throw std::invalid_argument("window has nothing above " + std::to_string(m));
    }
    return w;
  }

  bool operator==(const Window&) const = default;

 private:
  void validate() const {
    if (lo == 0) throw std::invalid_argument("window must start at 1 or above");
    if (lo > hi) throw std::invalid_argument("window needs lo <= hi");
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (ground[i] < lo || ground[i] > hi)
        throw std::invalid_argument("ground element outside window");
      if (i > 0 && ground[i] <= ground[i - 1])
        throw std::invalid_argument("ground list must be strictly increasing");
    }
  }
};

/// Parses `1..30`, optionally with a ground list `2,4,6`.
inline Window parse_window(std::string_view range, std::string_view ground_list = {}) {
  range = detail::trim(range);
  auto dots = range.find("..");
  if (dots == std::string_view::npos) throw std::invalid_argument("window must look like lo..hi");
  auto lo = detail::parse_element_list(range.substr(0, dots));
  auto hi = detail::parse_element_list(range.substr(dots + 2));
  if (lo.size() != 1 || hi.size() != 1) throw std::invalid_argument("window must look like lo..hi");
  std::vector<Element> ground;
  if (!detail::trim(ground_list).empty()) ground = parse_set(ground_list).elements();
  return Window(lo[0], hi[0], std::move(ground));
}

inline std::string to_string(const Window& w) {
  std::string out = std::to_string(w.lo) + ".." + std::to_string(w.hi);
  if (!w.ground.empty()) out += " ground " + to_string(SetView(w.ground));
  return out;
}

}  // namespace schreier

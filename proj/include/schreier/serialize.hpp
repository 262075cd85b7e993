#pragma once

// JSON forms of the library's results. Ordinals and families travel as
// their text literals; sets as arrays of naturals.

#include <string>

#include "json.hpp"
#include "schreier/canonical.hpp"
#include "schreier/cb_index.hpp"
#include "schreier/certificate.hpp"
#include "schreier/finite_set.hpp"
#include "schreier/ordinal.hpp"

namespace schreier {

inline void to_json(nlohmann::json& j, const FiniteSet& s) { j = s.elements(); }
inline void from_json(const nlohmann::json& j, FiniteSet& s) {
  s = FiniteSet(j.get<std::vector<Element>>());
}

inline void to_json(nlohmann::json& j, const Ordinal& x) { j = to_string(x); }
inline void from_json(const nlohmann::json& j, Ordinal& x) { x = parse_ordinal(j.get<std::string>()); }

inline void to_json(nlohmann::json& j, const Window& w) {
  j = {{"lo", w.lo}, {"hi", w.hi}};
  if (!w.ground.empty()) j["ground"] = w.ground;
}
inline void from_json(const nlohmann::json& j, Window& w) {
  w = Window(j.at("lo").get<Element>(), j.at("hi").get<Element>(),
             j.value("ground", std::vector<Element>{}));
}

inline void to_json(nlohmann::json& j, const CanonicalRep& r) {
  j = {{"blocks", r.blocks}, {"tail", r.tail}, {"type", r.type()}};
}
inline void from_json(const nlohmann::json& j, CanonicalRep& r) {
  r.blocks = j.at("blocks").get<std::vector<FiniteSet>>();
  r.tail = j.at("tail").get<FiniteSet>();
}

/// Ranks keyed by set literal, e.g. {"{}": 3, "{1}": 2}.
inline void to_json(nlohmann::json& j, const RankTable& t) {
  nlohmann::json ranks = nlohmann::json::object();
  for (const auto& [s, r] : t.rank) ranks[to_string(s)] = r;
  j = {{"rank", ranks}, {"index", t.index ? nlohmann::json(*t.index) : nlohmann::json()}};
}
inline void from_json(const nlohmann::json& j, RankTable& t) {
  t = RankTable{};
  for (const auto& [key, r] : j.at("rank").items()) t.rank.emplace(parse_set(key), r.get<std::uint32_t>());
  if (j.contains("index") && !j.at("index").is_null()) t.index = j.at("index").get<std::uint32_t>();
}

inline void to_json(nlohmann::json& j, const Certificate& c) {
  j = {{"kind", to_string(c.kind)}, {"witness", c.witness},   {"family", c.family},
       {"hereditary", c.hereditary}, {"coloring", c.coloring}, {"color", c.color},
       {"xi", c.xi},                 {"window", c.window},     {"target", c.target},
       {"order", c.order},           {"checked", c.checked},   {"transcript", c.transcript}};
}
inline void from_json(const nlohmann::json& j, Certificate& c) {
  c.kind = parse_certificate_kind(j.at("kind").get<std::string>());
  c.witness = j.at("witness").get<FiniteSet>();
  c.family = j.value("family", "");
  c.hereditary = j.value("hereditary", "");
  c.coloring = j.value("coloring", "");
  c.color = j.value("color", 0u);
  c.xi = j.value("xi", "");
  c.window = j.at("window").get<Window>();
  c.target = j.value("target", 0u);
  c.order = j.value("order", "lex");
  c.checked = j.value("checked", std::uint64_t{0});
  c.transcript = j.at("transcript").get<std::string>();
}

inline void to_json(nlohmann::json& j, const CheckResult& r) {
  j = {{"ok", r.ok()},
       {"property_holds", r.property_holds},
       {"transcript_matches", r.transcript_matches},
       {"reason", r.reason},
       {"transcript", r.transcript},
       {"checked", r.checked}};
}

}  // namespace schreier

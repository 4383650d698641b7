#pragma once

/// \file io.hpp
/// Text and JSON forms of sequences, integer sets, maps, and event traces.
///
/// Sequence text: one term per line (decimal or `inf`), then a directive
///   `#tail constant <v>` | `#tail infinite` | `#tail unknown`.
///   `#horizon <n|inf>` lines are informational and ignored on input.
/// Sequence JSON: {"terms":[0,1,"inf"],"tail":{"kind":"constant","value":2}}
/// Set text: one element per line, `#horizon <K>`, optionally `#complete`.
/// Set JSON: {"elements":[1,2,4,8],"horizon":8,"complete":true}
/// Map JSON: {"kind":"linear","lambda":"sqrt(2)"} or
///   {"kind":"piecewise","anchors":[[1,"3/2"],...],"tail":{"kind":"saturate","limit":"3"}}
///   (tail kind "extend" continues with the last slope).
/// Event line: {"t":"<literal>","kind":"meeting","count":4}

#include "lamo/continuous.hpp"
#include "lamo/error.hpp"
#include "lamo/exact.hpp"
#include "lamo/runner.hpp"
#include "lamo/sequences.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lamo::io {

using nlohmann::json;

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline bool looks_like_json(std::string_view text) {
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) return ch == '{';
  }
  return false;
}

[[noreturn]] inline void fail_line(std::size_t line, const std::string& why) {
  throw Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + why);
}

inline std::uint64_t parse_u64(const std::string& token, std::size_t line) {
  if (token.empty() || token.size() > 19 ||
      !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    fail_line(line, "expected a non-negative integer, got '" + token + "'");
  }
  return std::stoull(token);
}

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

inline std::uint64_t json_u64(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw Error(ErrorKind::parse_error, std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

inline Exact json_exact(const json& j, const char* what) {
  if (j.is_string()) return parse_exact(j.get<std::string>());
  if (j.is_number_integer()) return Exact(j.get<std::int64_t>());
  throw Error(ErrorKind::parse_error, std::string(what) + " must be an exact literal string or an integer");
}

}  // namespace detail

/// A parsed sequence with the source line of each term, so that order
/// violations can be reported against the input.
struct ParsedSequence {
  NumberSequence sequence;
  std::vector<std::size_t> term_lines;
};

inline ParsedSequence parse_sequence_text(std::string_view text) {
  std::vector<ExtNat> terms;
  std::vector<std::size_t> lines;
  std::optional<Tail> tail;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto words = detail::split_words(line.substr(1));
      if (words.empty()) continue;
      if (words[0] == "horizon") continue;
      if (words[0] != "tail") continue;  // free-form comment
      if (tail) detail::fail_line(lineno, "duplicate #tail directive");
      if (words.size() == 2 && words[1] == "infinite") {
        tail = Tail::infinite();
      } else if (words.size() == 2 && words[1] == "unknown") {
        tail = Tail::unknown();
      } else if (words.size() == 3 && words[1] == "constant") {
        tail = Tail::constant(detail::parse_u64(words[2], lineno));
      } else {
        detail::fail_line(lineno, "malformed #tail directive '" + line + "'");
      }
      continue;
    }
    if (tail) detail::fail_line(lineno, "term after the #tail directive");
    terms.push_back(line == "inf" ? kInfinity : ExtNat(detail::parse_u64(line, lineno)));
    lines.push_back(lineno);
  }
  return {NumberSequence(std::move(terms), tail.value_or(Tail::unknown())), std::move(lines)};
}

inline NumberSequence sequence_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw Error(ErrorKind::parse_error, "sequence JSON needs a \"terms\" array");
  }
  std::vector<ExtNat> terms;
  for (const json& t : j["terms"]) {
    if (t.is_string() && t.get<std::string>() == "inf") {
      terms.push_back(kInfinity);
    } else {
      terms.push_back(ExtNat(detail::json_u64(t, "term")));
    }
  }
  Tail tail = Tail::unknown();
  if (j.contains("tail")) {
    const json& tj = j["tail"];
    std::string kind = tj.is_object() && tj.contains("kind") && tj["kind"].is_string() ? tj["kind"].get<std::string>() : "";
    if (kind == "constant") {
      if (!tj.contains("value")) throw Error(ErrorKind::parse_error, "constant tail needs a \"value\"");
      tail = Tail::constant(detail::json_u64(tj["value"], "tail value"));
    } else if (kind == "infinite") {
      tail = Tail::infinite();
    } else if (kind != "unknown") {
      throw Error(ErrorKind::parse_error, "tail kind must be constant, infinite, or unknown");
    }
  }
  return NumberSequence(std::move(terms), tail);
}

/// Parses either format, detected from the first non-blank character.
inline ParsedSequence parse_sequence(std::string_view text) {
  if (!detail::looks_like_json(text)) return parse_sequence_text(text);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
  NumberSequence s = sequence_from_json(j);
  return {s, std::vector<std::size_t>(s.prefix_length(), 1)};
}

inline std::string horizon_text(const NumberSequence& s) {
  auto h = s.horizon();
  return h ? std::to_string(*h) : std::string("inf");
}

inline std::string tail_directive(const Tail& t) {
  switch (t.kind) {
    case TailKind::constant: return "#tail constant " + std::to_string(t.value);
    case TailKind::infinite: return "#tail infinite";
    case TailKind::unknown: return "#tail unknown";
  }
  return {};
}

inline std::string sequence_to_text(const NumberSequence& s) {
  std::string out;
  for (ExtNat x : s.prefix()) out += to_string(x) + "\n";
  out += tail_directive(s.tail()) + "\n";
  return out;
}

inline json tail_to_json(const Tail& t) {
  switch (t.kind) {
    case TailKind::constant: return {{"kind", "constant"}, {"value", t.value}};
    case TailKind::infinite: return {{"kind", "infinite"}};
    case TailKind::unknown: return {{"kind", "unknown"}};
  }
  return {};
}

inline json sequence_to_json(const NumberSequence& s) {
  json terms = json::array();
  for (ExtNat x : s.prefix()) {
    if (x.is_infinite()) {
      terms.push_back("inf");
    } else {
      terms.push_back(x.value());
    }
  }
  return {{"terms", std::move(terms)}, {"tail", tail_to_json(s.tail())}};
}

inline std::string sequence_to_csv(const NumberSequence& s) {
  std::string out = "n,value\n";
  for (std::size_t i = 0; i < s.prefix().size(); ++i) out += std::to_string(i + 1) + "," + to_string(s.prefix()[i]) + "\n";
  return out;
}

/// An integer set together with whether it is the whole hat set.
struct ParsedSet {
  IntSet set;
  SetExtent extent = SetExtent::window;
};

inline ParsedSet set_from_json(const json& j) {
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array()) {
    throw Error(ErrorKind::parse_error, "set JSON needs an \"elements\" array");
  }
  std::vector<std::uint64_t> elems;
  for (const json& e : j["elements"]) {
    if (e.is_number_integer() && e.get<std::int64_t>() <= 0) {
      throw Error(ErrorKind::not_positive, "set element " + e.dump() + " is not positive");
    }
    elems.push_back(detail::json_u64(e, "set element"));
  }
  std::uint64_t horizon = j.contains("horizon") ? detail::json_u64(j["horizon"], "horizon")
                                                : (elems.empty() ? 0 : *std::max_element(elems.begin(), elems.end()));
  bool complete = j.contains("complete") && j["complete"].is_boolean() && j["complete"].get<bool>();
  return {IntSet(std::move(elems), horizon), complete ? SetExtent::complete : SetExtent::window};
}

inline ParsedSet parse_set_text(std::string_view text) {
  std::vector<std::uint64_t> elems;
  std::optional<std::uint64_t> horizon;
  bool complete = false;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto words = detail::split_words(line.substr(1));
      if (words.size() == 2 && words[0] == "horizon") {
        horizon = detail::parse_u64(words[1], lineno);
      } else if (words.size() == 1 && words[0] == "complete") {
        complete = true;
      }
      continue;
    }
    if (line.front() == '-') throw Error(ErrorKind::not_positive, "line " + std::to_string(lineno) + ": negative element");
    elems.push_back(detail::parse_u64(line, lineno));
  }
  std::uint64_t h = horizon.value_or(elems.empty() ? 0 : *std::max_element(elems.begin(), elems.end()));
  return {IntSet(std::move(elems), h), complete ? SetExtent::complete : SetExtent::window};
}

inline ParsedSet parse_set(std::string_view text) {
  if (!detail::looks_like_json(text)) return parse_set_text(text);
  try {
    return set_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
}

inline json set_to_json(const IntSet& s) { return {{"elements", s.elements()}, {"horizon", s.horizon()}}; }

inline std::string set_to_text(const IntSet& s, bool complete) {
  std::string out;
  for (std::uint64_t e : s.elements()) out += std::to_string(e) + "\n";
  out += "#horizon " + std::to_string(s.horizon()) + "\n";
  if (complete) out += "#complete\n";
  return out;
}

/// Compact form used in reports: {1,2,4,8}.
inline std::string set_brief(const IntSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s.elements()[i]);
  return out + "}";
}

inline json map_to_json(const MonotoneMap& phi) {
  if (phi.is_linear()) return {{"kind", "linear"}, {"lambda", to_string(phi.slope())}};
  json anchors = json::array();
  for (std::size_t i = 0; i < phi.anchors().size(); ++i) anchors.push_back({i + 1, to_string(phi.anchors()[i])});
  json tail = phi.saturates() ? json{{"kind", "saturate"}, {"limit", to_string(*phi.image_bound())}} : json{{"kind", "extend"}};
  json out = {{"kind", "piecewise"}, {"anchors", std::move(anchors)}, {"tail", std::move(tail)}};
  if (auto h = phi.validity_horizon()) out["valid_through"] = *h;
  return out;
}

inline MonotoneMap map_from_json(const json& j) {
  std::string kind = j.is_object() && j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "linear") {
    if (!j.contains("lambda")) throw Error(ErrorKind::parse_error, "linear map needs \"lambda\"");
    return MonotoneMap::linear(detail::json_exact(j["lambda"], "lambda"));
  }
  if (kind != "piecewise") throw Error(ErrorKind::parse_error, "map kind must be linear or piecewise");
  if (!j.contains("anchors") || !j["anchors"].is_array()) throw Error(ErrorKind::parse_error, "piecewise map needs \"anchors\"");
  std::vector<Exact> anchors;
  for (const json& a : j["anchors"]) {
    if (!a.is_array() || a.size() != 2) throw Error(ErrorKind::parse_error, "anchor must be [t, value]");
    std::uint64_t t = detail::json_u64(a[0], "anchor time");
    if (t != anchors.size() + 1) {
      throw Error(ErrorKind::invalid_map, "anchor times must be 1, 2, ..., got " + std::to_string(t));
    }
    anchors.push_back(detail::json_exact(a[1], "anchor value"));
  }
  MapTail tail = ExtendLastSlope{};
  if (j.contains("tail")) {
    const json& tj = j["tail"];
    std::string tk = tj.is_object() && tj.contains("kind") && tj["kind"].is_string() ? tj["kind"].get<std::string>() : "";
    if (tk == "saturate") {
      if (!tj.contains("limit")) throw Error(ErrorKind::parse_error, "saturating tail needs \"limit\"");
      tail = SaturateToward{detail::json_exact(tj["limit"], "limit")};
    } else if (tk != "extend") {
      throw Error(ErrorKind::parse_error, "map tail kind must be saturate or extend");
    }
  }
  MonotoneMap phi = MonotoneMap::piecewise(std::move(anchors), std::move(tail));
  if (j.contains("valid_through")) phi.set_validity_horizon(detail::json_u64(j["valid_through"], "valid_through"));
  return phi;
}

/// A map literal: JSON object or a bare exact literal for a linear slope.
inline MonotoneMap parse_map(std::string_view text) {
  if (!detail::looks_like_json(text)) return MonotoneMap::linear(parse_exact(detail::trim(text)));
  try {
    return map_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
}

inline json event_to_json(const Event& e) {
  json j = {{"t", to_string(e.time)}, {"kind", std::string(to_string(e.kind))}, {"count", e.count}};
  if (e.collision) j["collision"] = true;
  return j;
}

inline Event event_from_json(const json& j) {
  Event e;
  e.time = detail::json_exact(j.at("t"), "t");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "meeting") {
    e.kind = EventKind::meeting;
  } else if (kind == "x_crosses_origin") {
    e.kind = EventKind::x_crosses_origin;
  } else if (kind == "y_crosses_origin") {
    e.kind = EventKind::y_crosses_origin;
  } else {
    throw Error(ErrorKind::parse_error, "unknown event kind '" + kind + "'");
  }
  e.count = detail::json_u64(j.at("count"), "count");
  e.collision = j.contains("collision") && j["collision"].get<bool>();
  return e;
}

/// JSON lines, one event per line.
inline std::string trace_to_jsonl(const EventLog& log) {
  std::string out;
  for (const Event& e : log.events) out += event_to_json(e).dump() + "\n";
  return out;
}

}  // namespace lamo::io

#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>

#include "r3/core/types.hpp"

namespace r3 {

// Wire format: optional <think>...</think> block, then a JSON object
//   {"answer": true/false, "explanation": "...", "edit_prompt": "..."}
//
// Parsing is total: malformed input never throws, it is encoded in
// FormatFlags (a format failure is a reward signal, not a crash).

namespace detail {

inline constexpr std::string_view kThinkOpen = "<think>";
inline constexpr std::string_view kThinkClose = "</think>";

struct Span {
  std::size_t begin = std::string::npos;
  std::size_t end = std::string::npos;
  bool valid() const { return begin != std::string::npos; }
  bool contains(std::size_t pos) const { return valid() && pos >= begin && pos < end; }
};

// First <think>...</think> block in the raw text, if any.
inline Span find_think_block(const std::string& text) {
  Span s;
  std::size_t open = text.find(kThinkOpen);
  if (open == std::string::npos) return s;
  std::size_t close = text.find(kThinkClose, open + kThinkOpen.size());
  if (close == std::string::npos) return s;
  s.begin = open;
  s.end = close + kThinkClose.size();
  return s;
}

// First parseable JSON object containing the key "answer", scanning '{'
// positions in text order but skipping any that fall inside `exclude`
// (the think block; its contents are free-form text).
inline Span find_payload(const std::string& text, const Span& exclude, json* out) {
  for (std::size_t pos = text.find('{'); pos != std::string::npos;
       pos = text.find('{', pos + 1)) {
    if (exclude.contains(pos)) continue;
    std::istringstream stream(text.substr(pos));
    json parsed;
    try {
      stream >> parsed;
    } catch (const json::exception&) {
      continue;
    }
    if (!parsed.is_object() || !parsed.contains("answer")) continue;
    Span s;
    s.begin = pos;
    std::streampos consumed = stream.tellg();
    s.end = consumed < 0 ? text.size() : pos + static_cast<std::size_t>(consumed);
    if (out) *out = std::move(parsed);
    return s;
  }
  return {};
}

inline int count_outside(const std::string& text, std::string_view needle, const Span& exclude) {
  int n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    if (!exclude.contains(pos)) ++n;
  }
  return n;
}

}  // namespace detail

inline StructuredResponse parse_structured_response(const std::string& raw_text) {
  using namespace detail;
  StructuredResponse resp;

  Span think = find_think_block(raw_text);
  if (think.valid()) {
    std::size_t body = think.begin + kThinkOpen.size();
    resp.think_text = raw_text.substr(body, think.end - kThinkClose.size() - body);
  }

  json payload;
  Span payload_span = find_payload(raw_text, think, &payload);

  // Exactly one well-formed block; tags hidden inside the JSON payload
  // (e.g. quoted in an explanation string) do not count.
  resp.format.think_ok =
      think.valid() &&
      count_outside(raw_text, kThinkOpen, payload_span) == 1 &&
      count_outside(raw_text, kThinkClose, payload_span) == 1;

  bool json_ok = payload_span.valid();
  bool verdict = false;
  std::string explanation;
  std::string edit_prompt;

  if (json_ok) {
    const json& answer = payload.at("answer");
    if (answer.is_boolean()) {
      verdict = answer.get<bool>();
    } else if (answer.is_string()) {
      std::string s = answer.get<std::string>();
      for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (s == "true") {
        verdict = true;
      } else if (s == "false") {
        verdict = false;
      } else {
        json_ok = false;
      }
    } else {
      json_ok = false;
    }
  }

  if (json_ok) {
    for (const char* key : {"explanation", "edit_prompt"}) {
      if (payload.contains(key)) {
        if (!payload.at(key).is_string()) {
          json_ok = false;
        } else {
          (std::string_view(key) == "explanation" ? explanation : edit_prompt) =
              payload.at(key).get<std::string>();
        }
      } else if (!verdict) {
        // the template requires all three keys when the answer is false
        json_ok = false;
      }
    }
  }

  resp.format.json_ok = json_ok;
  if (json_ok) {
    resp.verdict = verdict;
    resp.explanation = std::move(explanation);
    resp.edit_prompt = std::move(edit_prompt);
  }
  return resp;
}

inline std::string serialize_structured_response(const StructuredResponse& resp) {
  // Strip think tags from the think text so the emitted text always contains
  // exactly one well-formed block (reparse yields think_ok && json_ok).
  std::string think = resp.think_text;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::string_view tag : {detail::kThinkOpen, detail::kThinkClose}) {
      std::size_t pos;
      while ((pos = think.find(tag)) != std::string::npos) {
        think.erase(pos, tag.size());
        changed = true;
      }
    }
  }
  std::string out;
  out += detail::kThinkOpen;
  out += think;
  out += detail::kThinkClose;
  out += "{\"answer\": ";
  out += resp.verdict ? "true" : "false";
  out += ", \"explanation\": ";
  out += json(resp.explanation).dump();
  out += ", \"edit_prompt\": ";
  out += json(resp.edit_prompt).dump();
  out += "}";
  return out;
}

}  // namespace r3

#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "r3/core/types.hpp"

namespace r3 {

// Benchmark manifest: line-delimited JSON, one sample per line with keys
//   id, prompt{text, category, constraints?}, image{scene?|locator?},
//   gt_verdict, gt_explanation?, questions?

class ManifestError : public std::runtime_error {
 public:
  ManifestError(int line, const std::string& what)
      : std::runtime_error("manifest line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

inline void to_json(json& j, const BenchSample& s) {
  j = json{{"id", s.id}, {"prompt", s.prompt}, {"image", s.image},
           {"gt_verdict", s.gt_verdict}};
  if (!s.gt_verdict) {
    j["gt_explanation"] = s.gt_explanation;
    j["questions"] = s.questions;
  }
}

inline void from_json(const json& j, BenchSample& s) {
  s.id = j.at("id").get<std::string>();
  if (s.id.empty()) throw std::invalid_argument("id must be non-empty");
  s.prompt = j.at("prompt").get<Prompt>();
  s.image = j.at("image").get<Image>();
  s.gt_verdict = j.at("gt_verdict").get<bool>();
  s.gt_explanation = j.value("gt_explanation", "");
  s.questions.clear();
  if (j.contains("questions")) s.questions = j.at("questions").get<std::vector<std::string>>();
  if (!s.gt_verdict) {
    if (s.gt_explanation.empty())
      throw std::invalid_argument("misaligned sample requires non-empty gt_explanation");
    if (s.questions.empty())
      throw std::invalid_argument("misaligned sample requires at least one entry in questions");
  } else {
    if (!s.gt_explanation.empty() || !s.questions.empty())
      throw std::invalid_argument("aligned sample must not carry gt_explanation or questions");
  }
}

inline std::vector<BenchSample> load_manifest(std::istream& source) {
  std::vector<BenchSample> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      samples.push_back(json::parse(line).get<BenchSample>());
    } catch (const std::exception& e) {
      throw ManifestError(line_no, e.what());
    }
  }
  return samples;
}

inline void save_manifest(std::ostream& out, const std::vector<BenchSample>& samples) {
  for (const auto& s : samples) out << json(s).dump() << "\n";
}

}  // namespace r3

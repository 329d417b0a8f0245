#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace r3 {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Benchmark categories
// ---------------------------------------------------------------------------

enum class Category {
  kColor,
  kComplex,
  kNonSpatial,
  kNumeracy,
  kObject,
  kShape,
  kSpatial,
  kTexture,
};

inline constexpr std::array<Category, 8> kAllCategories = {
    Category::kColor,   Category::kComplex, Category::kNonSpatial,
    Category::kNumeracy, Category::kObject, Category::kShape,
    Category::kSpatial, Category::kTexture,
};

inline const char* to_string(Category c) {
  switch (c) {
    case Category::kColor: return "Color";
    case Category::kComplex: return "Complex";
    case Category::kNonSpatial: return "NonSpatial";
    case Category::kNumeracy: return "Numeracy";
    case Category::kObject: return "Object";
    case Category::kShape: return "Shape";
    case Category::kSpatial: return "Spatial";
    case Category::kTexture: return "Texture";
  }
  return "?";
}

inline std::optional<Category> category_from_string(const std::string& s) {
  for (Category c : kAllCategories) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constraints (symbolic prompt semantics, synthetic mode only)
// ---------------------------------------------------------------------------

enum class ConstraintKind {
  kObjectPresence,
  kColor,
  kShape,
  kTexture,
  kCount,
  kSpatialRelation,
  kAction,
};

inline constexpr std::array<ConstraintKind, 7> kAllConstraintKinds = {
    ConstraintKind::kObjectPresence, ConstraintKind::kColor,
    ConstraintKind::kShape,          ConstraintKind::kTexture,
    ConstraintKind::kCount,          ConstraintKind::kSpatialRelation,
    ConstraintKind::kAction,
};

inline const char* to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::kObjectPresence: return "object-presence";
    case ConstraintKind::kColor: return "color";
    case ConstraintKind::kShape: return "shape";
    case ConstraintKind::kTexture: return "texture";
    case ConstraintKind::kCount: return "count";
    case ConstraintKind::kSpatialRelation: return "spatial-relation";
    case ConstraintKind::kAction: return "action";
  }
  return "?";
}

inline std::optional<ConstraintKind> constraint_kind_from_string(const std::string& s) {
  for (ConstraintKind k : kAllConstraintKinds) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

enum class SpatialRelation { kLeftOf, kRightOf, kAbove, kBelow };

inline const char* to_string(SpatialRelation r) {
  switch (r) {
    case SpatialRelation::kLeftOf: return "left-of";
    case SpatialRelation::kRightOf: return "right-of";
    case SpatialRelation::kAbove: return "above";
    case SpatialRelation::kBelow: return "below";
  }
  return "?";
}

inline std::optional<SpatialRelation> relation_from_string(const std::string& s) {
  for (SpatialRelation r : {SpatialRelation::kLeftOf, SpatialRelation::kRightOf,
                            SpatialRelation::kAbove, SpatialRelation::kBelow}) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

inline SpatialRelation inverse(SpatialRelation r) {
  switch (r) {
    case SpatialRelation::kLeftOf: return SpatialRelation::kRightOf;
    case SpatialRelation::kRightOf: return SpatialRelation::kLeftOf;
    case SpatialRelation::kAbove: return SpatialRelation::kBelow;
    case SpatialRelation::kBelow: return SpatialRelation::kAbove;
  }
  return r;
}

// One atomic requirement on the scene. Field use depends on kind:
//   object-presence           subject
//   color/shape/texture/action subject + value
//   count                     subject + count (> 0)
//   spatial-relation          subject + relation + reference
struct Constraint {
  ConstraintKind kind = ConstraintKind::kObjectPresence;
  std::string subject;
  std::string value;
  int count = 0;
  SpatialRelation relation = SpatialRelation::kLeftOf;
  std::string reference;

  static Constraint presence(std::string subject) {
    Constraint c;
    c.kind = ConstraintKind::kObjectPresence;
    c.subject = std::move(subject);
    return c;
  }
  static Constraint attribute(ConstraintKind kind, std::string subject, std::string value) {
    Constraint c;
    c.kind = kind;
    c.subject = std::move(subject);
    c.value = std::move(value);
    return c;
  }
  static Constraint counted(std::string subject, int count) {
    Constraint c;
    c.kind = ConstraintKind::kCount;
    c.subject = std::move(subject);
    c.count = count;
    return c;
  }
  static Constraint spatial(std::string subject, SpatialRelation rel, std::string reference) {
    Constraint c;
    c.kind = ConstraintKind::kSpatialRelation;
    c.subject = std::move(subject);
    c.relation = rel;
    c.reference = std::move(reference);
    return c;
  }

  bool operator==(const Constraint&) const = default;
};

// ---------------------------------------------------------------------------
// Prompt
// ---------------------------------------------------------------------------

struct Prompt {
  std::string text;
  Category category = Category::kComplex;
  std::vector<Constraint> constraints;  // synthetic mode only

  bool operator==(const Prompt&) const = default;
};

// ---------------------------------------------------------------------------
// Scene images (symbolic) and opaque references (real rasters)
// ---------------------------------------------------------------------------

struct SceneObject {
  std::string id;
  std::string label;
  std::string color;
  std::string shape;
  std::string texture;
  std::string action;
  double x = 0.0;
  double y = 0.0;
  double size = 1.0;  // > 0

  bool operator==(const SceneObject&) const = default;
};

struct SceneImage {
  std::vector<SceneObject> objects;
  double canvas_w = 100.0;
  double canvas_h = 100.0;

  bool operator==(const SceneImage&) const = default;

  const SceneObject* find(const std::string& label) const {
    for (const auto& o : objects) {
      if (o.label == label) return &o;
    }
    return nullptr;
  }
  int count_label(const std::string& label) const {
    int n = 0;
    for (const auto& o : objects) n += (o.label == label);
    return n;
  }
};

struct ImageRef {
  std::string locator;                 // file path or URL, opaque
  std::string kind = "raster";         // "scene" | "raster"

  bool operator==(const ImageRef&) const = default;
};

using Image = std::variant<SceneImage, ImageRef>;

inline bool image_equal(const Image& a, const Image& b) { return a == b; }

inline const SceneImage* as_scene(const Image& img) {
  return std::get_if<SceneImage>(&img);
}

// ---------------------------------------------------------------------------
// Structured response <verdict, explanation, edit_prompt>
// ---------------------------------------------------------------------------

struct FormatFlags {
  bool think_ok = false;  // exactly one well-formed think block
  bool json_ok = false;   // payload parses with the required keys

  bool operator==(const FormatFlags&) const = default;
};

struct StructuredResponse {
  bool verdict = false;
  std::string explanation;
  std::string edit_prompt;
  std::string think_text;
  FormatFlags format;

  bool operator==(const StructuredResponse&) const = default;
};

// ---------------------------------------------------------------------------
// Judge verdict (Phase I semantic-equivalence check)
// ---------------------------------------------------------------------------

struct JudgeVerdict {
  bool equivalent = false;
  std::string reasoning;
};

// ---------------------------------------------------------------------------
// Benchmark sample
// ---------------------------------------------------------------------------

struct BenchSample {
  std::string id;
  Prompt prompt;
  Image image;
  bool gt_verdict = true;
  std::string gt_explanation;          // required iff gt_verdict == false
  std::vector<std::string> questions;  // required iff gt_verdict == false
};

// ---------------------------------------------------------------------------
// JSON conversions (manifest schema)
// ---------------------------------------------------------------------------

inline void to_json(json& j, const Constraint& c) {
  j = json{{"kind", to_string(c.kind)}, {"subject", c.subject}};
  switch (c.kind) {
    case ConstraintKind::kObjectPresence:
      break;
    case ConstraintKind::kCount:
      j["count"] = c.count;
      break;
    case ConstraintKind::kSpatialRelation:
      j["relation"] = to_string(c.relation);
      j["reference"] = c.reference;
      break;
    default:
      j["value"] = c.value;
  }
}

inline void from_json(const json& j, Constraint& c) {
  auto kind = constraint_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("constraint: unknown kind");
  c.kind = *kind;
  c.subject = j.at("subject").get<std::string>();
  switch (c.kind) {
    case ConstraintKind::kObjectPresence:
      break;
    case ConstraintKind::kCount:
      c.count = j.at("count").get<int>();
      if (c.count <= 0) throw std::invalid_argument("constraint: count must be positive");
      break;
    case ConstraintKind::kSpatialRelation: {
      auto rel = relation_from_string(j.at("relation").get<std::string>());
      if (!rel) throw std::invalid_argument("constraint: unknown relation");
      c.relation = *rel;
      c.reference = j.at("reference").get<std::string>();
      break;
    }
    default:
      c.value = j.at("value").get<std::string>();
  }
}

inline void to_json(json& j, const Prompt& p) {
  j = json{{"text", p.text}, {"category", to_string(p.category)}};
  if (!p.constraints.empty()) j["constraints"] = p.constraints;
}

inline void from_json(const json& j, Prompt& p) {
  p.text = j.at("text").get<std::string>();
  if (p.text.empty()) throw std::invalid_argument("prompt: text must be non-empty");
  auto cat = category_from_string(j.at("category").get<std::string>());
  if (!cat) throw std::invalid_argument("prompt: unknown category");
  p.category = *cat;
  p.constraints.clear();
  if (j.contains("constraints")) p.constraints = j.at("constraints").get<std::vector<Constraint>>();
}

inline void to_json(json& j, const SceneObject& o) {
  j = json{{"id", o.id},       {"label", o.label},   {"color", o.color},
           {"shape", o.shape}, {"texture", o.texture}, {"action", o.action},
           {"pos", {o.x, o.y}}, {"size", o.size}};
}

inline void from_json(const json& j, SceneObject& o) {
  o.id = j.at("id").get<std::string>();
  o.label = j.at("label").get<std::string>();
  o.color = j.value("color", "");
  o.shape = j.value("shape", "");
  o.texture = j.value("texture", "");
  o.action = j.value("action", "");
  const auto& pos = j.at("pos");
  o.x = pos.at(0).get<double>();
  o.y = pos.at(1).get<double>();
  o.size = j.value("size", 1.0);
  if (o.size <= 0.0) throw std::invalid_argument("scene object: size must be > 0");
}

inline void to_json(json& j, const SceneImage& s) {
  j = json{{"canvas", {s.canvas_w, s.canvas_h}}, {"objects", s.objects}};
}

inline void from_json(const json& j, SceneImage& s) {
  const auto& canvas = j.at("canvas");
  s.canvas_w = canvas.at(0).get<double>();
  s.canvas_h = canvas.at(1).get<double>();
  s.objects = j.at("objects").get<std::vector<SceneObject>>();
  std::vector<std::string> seen;
  for (const auto& o : s.objects) {
    if (o.x < 0 || o.x > s.canvas_w || o.y < 0 || o.y > s.canvas_h)
      throw std::invalid_argument("scene: object position outside canvas");
    for (const auto& id : seen)
      if (id == o.id) throw std::invalid_argument("scene: duplicate object id");
    seen.push_back(o.id);
  }
}

inline void to_json(json& j, const Image& img) {
  if (const auto* scene = std::get_if<SceneImage>(&img)) {
    j = json{{"scene", *scene}};
  } else {
    const auto& ref = std::get<ImageRef>(img);
    j = json{{"locator", ref.locator}, {"kind", ref.kind}};
  }
}

inline void from_json(const json& j, Image& img) {
  if (j.contains("scene")) {
    img = j.at("scene").get<SceneImage>();
  } else if (j.contains("locator")) {
    ImageRef ref;
    ref.locator = j.at("locator").get<std::string>();
    if (ref.locator.empty()) throw std::invalid_argument("image: locator must be non-empty");
    ref.kind = j.value("kind", "raster");
    img = ref;
  } else {
    throw std::invalid_argument("image: expected scene or locator");
  }
}

}  // namespace r3

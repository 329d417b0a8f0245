#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "r3/core/types.hpp"
#include "r3/util/rng.hpp"

namespace r3::synthenv {

// Desk-scale symbolic world. Scenes live on a 100x100 canvas; spatial
// relations are decided by coordinate comparison with a 1-unit dead zone
// (|dx| <= 1 counts as a violation so ties are deterministic). "above"
// means strictly greater y.

inline constexpr double kCanvas = 100.0;
inline constexpr double kDeadZone = 1.0;
inline constexpr double kSpatialMargin = 10.0;

inline const std::vector<std::string>& label_pool() {
  static const std::vector<std::string> v = {
      "cup",   "book",  "dog",   "cat",  "vase",  "lamp",  "chair",
      "ball",  "plate", "clock", "spoon", "bottle", "hat",  "boat",
      "kite",  "fork",  "bench", "horse", "bird",  "shoe"};
  return v;
}
inline const std::vector<std::string>& color_pool() {
  static const std::vector<std::string> v = {"red",    "blue",  "green", "yellow",
                                             "purple", "orange", "black", "white"};
  return v;
}
inline const std::vector<std::string>& shape_pool() {
  static const std::vector<std::string> v = {"round",     "square", "triangular",
                                             "hexagonal", "oval",   "rectangular"};
  return v;
}
inline const std::vector<std::string>& texture_pool() {
  static const std::vector<std::string> v = {"wooden", "metal", "plastic",
                                             "fabric", "glass", "ceramic"};
  return v;
}
inline const std::vector<std::string>& action_pool() {
  static const std::vector<std::string> v = {"running", "sleeping", "jumping",
                                             "sitting", "flying",   "standing"};
  return v;
}

// Defaults for freshly added objects; deliberately outside the pools so a
// new object never satisfies or breaks an attribute constraint by accident.
inline constexpr const char* kDefaultColor = "gray";
inline constexpr const char* kDefaultShape = "plain";
inline constexpr const char* kDefaultTexture = "smooth";
inline constexpr const char* kDefaultAction = "idle";

inline bool pool_contains(const std::vector<std::string>& pool, const std::string& v) {
  return std::find(pool.begin(), pool.end(), v) != pool.end();
}

inline std::string pick_different(const std::vector<std::string>& pool,
                                  const std::string& current, Rng& rng) {
  std::string candidate = pool[rng.below(pool.size())];
  while (candidate == current) candidate = pool[rng.below(pool.size())];
  return candidate;
}

inline const std::array<const char*, 7>& number_words() {
  static const std::array<const char*, 7> w = {"zero", "one", "two",  "three",
                                               "four", "five", "six"};
  return w;
}

inline std::string number_word(int n) {
  if (n >= 0 && n < static_cast<int>(number_words().size())) return number_words()[n];
  return std::to_string(n);
}

inline std::optional<int> parse_number_word(const std::string& s) {
  for (std::size_t i = 0; i < number_words().size(); ++i) {
    if (s == number_words()[i]) return static_cast<int>(i);
  }
  try {
    std::size_t used = 0;
    int n = std::stoi(s, &used);
    if (used == s.size()) return n;
  } catch (...) {
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constraint evaluation
// ---------------------------------------------------------------------------

inline bool relation_holds(SpatialRelation rel, const SceneObject& a, const SceneObject& b) {
  switch (rel) {
    case SpatialRelation::kLeftOf: return a.x < b.x - kDeadZone;
    case SpatialRelation::kRightOf: return a.x > b.x + kDeadZone;
    case SpatialRelation::kAbove: return a.y > b.y + kDeadZone;
    case SpatialRelation::kBelow: return a.y < b.y - kDeadZone;
  }
  return false;
}

inline bool constraint_satisfied(const Constraint& c, const SceneImage& scene) {
  switch (c.kind) {
    case ConstraintKind::kObjectPresence:
      return scene.count_label(c.subject) >= 1;
    case ConstraintKind::kCount:
      return scene.count_label(c.subject) == c.count;
    case ConstraintKind::kSpatialRelation: {
      const SceneObject* a = scene.find(c.subject);
      const SceneObject* b = scene.find(c.reference);
      return a && b && relation_holds(c.relation, *a, *b);
    }
    default: {
      // attribute constraint: at least one object with the label, and every
      // object carrying the label has the required attribute value
      bool any = false;
      for (const auto& o : scene.objects) {
        if (o.label != c.subject) continue;
        any = true;
        const std::string& actual = c.kind == ConstraintKind::kColor  ? o.color
                                  : c.kind == ConstraintKind::kShape ? o.shape
                                  : c.kind == ConstraintKind::kTexture ? o.texture
                                                                       : o.action;
        if (actual != c.value) return false;
      }
      return any;
    }
  }
}

struct Violation {
  int constraint_index = 0;
  ConstraintKind kind = ConstraintKind::kObjectPresence;

  bool operator==(const Violation&) const = default;
};

struct OracleReport {
  bool consistent = true;
  std::vector<Violation> violations;
  double alignment = 1.0;  // fraction of satisfied constraints
};

inline OracleReport oracle_verify(const Prompt& prompt, const SceneImage& scene) {
  OracleReport report;
  if (prompt.constraints.empty()) return report;
  int satisfied = 0;
  for (std::size_t i = 0; i < prompt.constraints.size(); ++i) {
    if (constraint_satisfied(prompt.constraints[i], scene)) {
      ++satisfied;
    } else {
      report.violations.push_back({static_cast<int>(i), prompt.constraints[i].kind});
    }
  }
  report.alignment = static_cast<double>(satisfied) / static_cast<double>(prompt.constraints.size());
  report.consistent = report.violations.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Text rendering: prompt clauses, explanations, questions
// ---------------------------------------------------------------------------

inline std::string relation_phrase(SpatialRelation rel) {
  switch (rel) {
    case SpatialRelation::kLeftOf: return "to the left of";
    case SpatialRelation::kRightOf: return "to the right of";
    case SpatialRelation::kAbove: return "above";
    case SpatialRelation::kBelow: return "below";
  }
  return "?";
}

inline std::string plural(const std::string& noun, int n) {
  return n == 1 ? noun : noun + "s";
}

inline std::string constraint_clause(const Constraint& c) {
  switch (c.kind) {
    case ConstraintKind::kObjectPresence: return "a " + c.subject;
    case ConstraintKind::kColor: return "a " + c.value + " " + c.subject;
    case ConstraintKind::kShape: return "a " + c.value + " " + c.subject;
    case ConstraintKind::kTexture: return "a " + c.value + " " + c.subject;
    case ConstraintKind::kAction: return "a " + c.subject + " " + c.value;
    case ConstraintKind::kCount:
      return number_word(c.count) + " " + plural(c.subject, c.count);
    case ConstraintKind::kSpatialRelation:
      return "a " + c.subject + " " + relation_phrase(c.relation) + " a " + c.reference;
  }
  return "";
}

inline std::string render_prompt_text(const std::vector<Constraint>& constraints) {
  std::string text = "a photo of ";
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (i > 0) text += " and ";
    text += constraint_clause(constraints[i]);
  }
  return text;
}

// How the scene actually renders the clause governed by `c` (used for
// explanations and for the shortcut rewrite action).
inline std::string actual_clause(const Constraint& c, const SceneImage& scene) {
  const SceneObject* obj = scene.find(c.subject);
  switch (c.kind) {
    case ConstraintKind::kObjectPresence:
      return obj ? "a " + c.subject : "no " + c.subject;
    case ConstraintKind::kColor:
      return obj ? "a " + obj->color + " " + c.subject : "no " + c.subject;
    case ConstraintKind::kShape:
      return obj ? "a " + obj->shape + " " + c.subject : "no " + c.subject;
    case ConstraintKind::kTexture:
      return obj ? "a " + obj->texture + " " + c.subject : "no " + c.subject;
    case ConstraintKind::kAction:
      return obj ? "a " + c.subject + " " + obj->action : "no " + c.subject;
    case ConstraintKind::kCount: {
      int n = scene.count_label(c.subject);
      return number_word(n) + " " + plural(c.subject, n);
    }
    case ConstraintKind::kSpatialRelation: {
      const SceneObject* a = scene.find(c.subject);
      const SceneObject* b = scene.find(c.reference);
      if (!a || !b) return "no " + (a ? c.reference : c.subject);
      for (SpatialRelation rel : {SpatialRelation::kLeftOf, SpatialRelation::kRightOf,
                                  SpatialRelation::kAbove, SpatialRelation::kBelow}) {
        if (relation_holds(rel, *a, *b))
          return "a " + c.subject + " " + relation_phrase(rel) + " a " + c.reference;
      }
      return "a " + c.subject + " next to a " + c.reference;
    }
  }
  return "";
}

inline std::string violation_explanation(const Constraint& c, const SceneImage& scene) {
  return "The prompt requires " + constraint_clause(c) + " but the image shows " +
         actual_clause(c, scene) + ".";
}

inline std::string explanation_for(const std::vector<Constraint>& constraints,
                                   const std::vector<Violation>& violations,
                                   const SceneImage& scene) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += " ";
    out += violation_explanation(constraints[v.constraint_index], scene);
  }
  return out;
}

inline std::string constraint_question(const Constraint& c) {
  switch (c.kind) {
    case ConstraintKind::kObjectPresence:
      return "Is there a " + c.subject + " in the image?";
    case ConstraintKind::kColor:
      return "Is the " + c.subject + " " + c.value + " in color?";
    case ConstraintKind::kShape:
    case ConstraintKind::kTexture:
    case ConstraintKind::kAction:
      return "Is the " + c.subject + " " + c.value + "?";
    case ConstraintKind::kCount:
      return "Are there exactly " + number_word(c.count) + " " + plural(c.subject, c.count) + "?";
    case ConstraintKind::kSpatialRelation:
      return "Is the " + c.subject + " " + relation_phrase(c.relation) + " the " + c.reference + "?";
  }
  return "";
}

// Inverse of constraint_question, used by the oracle VQA answerer.
inline std::optional<Constraint> parse_question(const std::string& q) {
  auto strip_suffix = [](std::string s, const std::string& suffix) -> std::optional<std::string> {
    if (s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0)
      return s.substr(0, s.size() - suffix.size());
    return std::nullopt;
  };
  auto strip_prefix = [](const std::string& s, const std::string& prefix) -> std::optional<std::string> {
    if (s.rfind(prefix, 0) == 0) return s.substr(prefix.size());
    return std::nullopt;
  };

  if (auto rest = strip_prefix(q, "Is there a ")) {
    if (auto label = strip_suffix(*rest, " in the image?")) return Constraint::presence(*label);
    return std::nullopt;
  }
  if (auto rest = strip_prefix(q, "Are there exactly ")) {
    auto body = strip_suffix(*rest, "?");
    if (!body) return std::nullopt;
    std::size_t space = body->find(' ');
    if (space == std::string::npos) return std::nullopt;
    auto n = parse_number_word(body->substr(0, space));
    if (!n || *n <= 0) return std::nullopt;
    std::string noun = body->substr(space + 1);
    if (*n != 1 && noun.size() > 1 && noun.back() == 's') noun.pop_back();
    return Constraint::counted(noun, *n);
  }
  if (auto rest = strip_prefix(q, "Is the ")) {
    auto body = strip_suffix(*rest, "?");
    if (!body) return std::nullopt;
    for (SpatialRelation rel : {SpatialRelation::kLeftOf, SpatialRelation::kRightOf,
                                SpatialRelation::kAbove, SpatialRelation::kBelow}) {
      std::string mid = " " + relation_phrase(rel) + " the ";
      std::size_t pos = body->find(mid);
      if (pos != std::string::npos)
        return Constraint::spatial(body->substr(0, pos), rel, body->substr(pos + mid.size()));
    }
    if (auto head = strip_suffix(*body, " in color")) {
      std::size_t space = head->rfind(' ');
      if (space == std::string::npos) return std::nullopt;
      return Constraint::attribute(ConstraintKind::kColor, head->substr(0, space),
                                   head->substr(space + 1));
    }
    std::size_t space = body->rfind(' ');
    if (space == std::string::npos) return std::nullopt;
    std::string subject = body->substr(0, space);
    std::string value = body->substr(space + 1);
    if (pool_contains(shape_pool(), value))
      return Constraint::attribute(ConstraintKind::kShape, subject, value);
    if (pool_contains(texture_pool(), value))
      return Constraint::attribute(ConstraintKind::kTexture, subject, value);
    if (pool_contains(action_pool(), value))
      return Constraint::attribute(ConstraintKind::kAction, subject, value);
    return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Task generation
// ---------------------------------------------------------------------------

struct SynthTask {
  Prompt prompt;
  SceneImage scene;
  bool gt_verdict = true;
  std::vector<Violation> violations;
};

struct TaskConfig {
  int n_constraints = 2;
  double flaw_probability = 0.5;
  std::optional<Category> category;  // unset: drawn uniformly
};

inline Category category_for_kind(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::kObjectPresence: return Category::kObject;
    case ConstraintKind::kColor: return Category::kColor;
    case ConstraintKind::kShape: return Category::kShape;
    case ConstraintKind::kTexture: return Category::kTexture;
    case ConstraintKind::kCount: return Category::kNumeracy;
    case ConstraintKind::kSpatialRelation: return Category::kSpatial;
    case ConstraintKind::kAction: return Category::kNonSpatial;
  }
  return Category::kComplex;
}

inline std::optional<ConstraintKind> kind_for_category(Category c) {
  switch (c) {
    case Category::kObject: return ConstraintKind::kObjectPresence;
    case Category::kColor: return ConstraintKind::kColor;
    case Category::kShape: return ConstraintKind::kShape;
    case Category::kTexture: return ConstraintKind::kTexture;
    case Category::kNumeracy: return ConstraintKind::kCount;
    case Category::kSpatial: return ConstraintKind::kSpatialRelation;
    case Category::kNonSpatial: return ConstraintKind::kAction;
    case Category::kComplex: return std::nullopt;  // mixed
  }
  return std::nullopt;
}

namespace detail {

inline SceneObject make_object(const std::string& label, int serial, double x, double y) {
  SceneObject o;
  o.id = label + "-" + std::to_string(serial);
  o.label = label;
  o.color = kDefaultColor;
  o.shape = kDefaultShape;
  o.texture = kDefaultTexture;
  o.action = kDefaultAction;
  o.x = x;
  o.y = y;
  o.size = 5.0;
  return o;
}

inline double jitter(Rng& rng, double lo, double hi) {
  return lo + rng.uniform() * (hi - lo);
}

}  // namespace detail

// Draws constraint kinds for a category; each constraint owns distinct object
// labels (spatial constraints own both endpoints) so corruptions map 1:1 to
// violations and every fix template stays applicable.
inline std::vector<Constraint> sample_constraints(Category category, int n, Rng& rng) {
  std::vector<Constraint> constraints;
  std::vector<std::string> labels = label_pool();
  // deterministic shuffle for distinct subjects
  for (std::size_t i = labels.size(); i > 1; --i)
    std::swap(labels[i - 1], labels[rng.below(i)]);
  std::size_t next_label = 0;
  auto take_label = [&]() { return labels[next_label++ % labels.size()]; };

  for (int i = 0; i < n; ++i) {
    ConstraintKind kind;
    if (auto fixed = kind_for_category(category)) {
      kind = *fixed;
    } else {
      kind = kAllConstraintKinds[rng.below(kAllConstraintKinds.size())];
    }
    switch (kind) {
      case ConstraintKind::kObjectPresence:
        constraints.push_back(Constraint::presence(take_label()));
        break;
      case ConstraintKind::kColor:
        constraints.push_back(Constraint::attribute(
            kind, take_label(), color_pool()[rng.below(color_pool().size())]));
        break;
      case ConstraintKind::kShape:
        constraints.push_back(Constraint::attribute(
            kind, take_label(), shape_pool()[rng.below(shape_pool().size())]));
        break;
      case ConstraintKind::kTexture:
        constraints.push_back(Constraint::attribute(
            kind, take_label(), texture_pool()[rng.below(texture_pool().size())]));
        break;
      case ConstraintKind::kAction:
        constraints.push_back(Constraint::attribute(
            kind, take_label(), action_pool()[rng.below(action_pool().size())]));
        break;
      case ConstraintKind::kCount:
        constraints.push_back(Constraint::counted(take_label(), rng.range(2, 4)));
        break;
      case ConstraintKind::kSpatialRelation: {
        SpatialRelation rel = static_cast<SpatialRelation>(rng.below(4));
        std::string a = take_label();
        std::string b = take_label();
        constraints.push_back(Constraint::spatial(a, rel, b));
        break;
      }
    }
  }
  return constraints;
}

inline SceneImage build_satisfying_scene(const std::vector<Constraint>& constraints, Rng& rng) {
  SceneImage scene;
  scene.canvas_w = kCanvas;
  scene.canvas_h = kCanvas;
  int serial = 0;
  auto free_pos = [&](double& x, double& y) {
    x = detail::jitter(rng, 5.0, kCanvas - 5.0);
    y = detail::jitter(rng, 5.0, kCanvas - 5.0);
  };
  for (const auto& c : constraints) {
    double x, y;
    switch (c.kind) {
      case ConstraintKind::kSpatialRelation: {
        // place subject/reference so the relation holds with a solid margin
        double lo = detail::jitter(rng, 5.0, 40.0);
        double hi = lo + kSpatialMargin + detail::jitter(rng, 0.0, 40.0);
        double other = detail::jitter(rng, 5.0, kCanvas - 5.0);
        SceneObject a = detail::make_object(c.subject, serial++, 0, 0);
        SceneObject b = detail::make_object(c.reference, serial++, 0, 0);
        switch (c.relation) {
          case SpatialRelation::kLeftOf: a.x = lo; b.x = hi; a.y = b.y = other; break;
          case SpatialRelation::kRightOf: a.x = hi; b.x = lo; a.y = b.y = other; break;
          case SpatialRelation::kAbove: a.y = hi; b.y = lo; a.x = b.x = other; break;
          case SpatialRelation::kBelow: a.y = lo; b.y = hi; a.x = b.x = other; break;
        }
        scene.objects.push_back(a);
        scene.objects.push_back(b);
        break;
      }
      case ConstraintKind::kCount:
        for (int i = 0; i < c.count; ++i) {
          free_pos(x, y);
          scene.objects.push_back(detail::make_object(c.subject, serial++, x, y));
        }
        break;
      default: {
        free_pos(x, y);
        SceneObject o = detail::make_object(c.subject, serial++, x, y);
        switch (c.kind) {
          case ConstraintKind::kColor: o.color = c.value; break;
          case ConstraintKind::kShape: o.shape = c.value; break;
          case ConstraintKind::kTexture: o.texture = c.value; break;
          case ConstraintKind::kAction: o.action = c.value; break;
          default: break;
        }
        scene.objects.push_back(o);
      }
    }
  }
  return scene;
}

// Corrupts each constraint independently with the given probability; the
// corruption kind always matches the constraint kind.
inline std::vector<Violation> corrupt_scene(SceneImage& scene,
                                            const std::vector<Constraint>& constraints,
                                            double flaw_probability, Rng& rng) {
  std::vector<Violation> violations;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!rng.bernoulli(flaw_probability)) continue;
    const Constraint& c = constraints[i];
    switch (c.kind) {
      case ConstraintKind::kObjectPresence:
        std::erase_if(scene.objects, [&](const SceneObject& o) { return o.label == c.subject; });
        break;
      case ConstraintKind::kColor:
      case ConstraintKind::kShape:
      case ConstraintKind::kTexture:
      case ConstraintKind::kAction: {
        const auto& pool = c.kind == ConstraintKind::kColor  ? color_pool()
                         : c.kind == ConstraintKind::kShape ? shape_pool()
                         : c.kind == ConstraintKind::kTexture ? texture_pool()
                                                              : action_pool();
        std::string wrong = pick_different(pool, c.value, rng);
        for (auto& o : scene.objects) {
          if (o.label != c.subject) continue;
          switch (c.kind) {
            case ConstraintKind::kColor: o.color = wrong; break;
            case ConstraintKind::kShape: o.shape = wrong; break;
            case ConstraintKind::kTexture: o.texture = wrong; break;
            default: o.action = wrong; break;
          }
        }
        break;
      }
      case ConstraintKind::kCount: {
        int wrong = c.count;
        while (wrong == c.count) wrong = rng.range(1, 5);
        int have = scene.count_label(c.subject);
        while (have > wrong) {
          for (std::size_t j = scene.objects.size(); j-- > 0;) {
            if (scene.objects[j].label == c.subject) {
              scene.objects.erase(scene.objects.begin() + static_cast<long>(j));
              break;
            }
          }
          --have;
        }
        int serial = 1000 + static_cast<int>(i) * 10;
        while (have < wrong) {
          scene.objects.push_back(detail::make_object(
              c.subject, serial++, detail::jitter(rng, 5, kCanvas - 5),
              detail::jitter(rng, 5, kCanvas - 5)));
          ++have;
        }
        break;
      }
      case ConstraintKind::kSpatialRelation: {
        SceneObject* a = nullptr;
        SceneObject* b = nullptr;
        for (auto& o : scene.objects) {
          if (!a && o.label == c.subject) a = &o;
          if (!b && o.label == c.reference) b = &o;
        }
        if (a && b) {
          std::swap(a->x, b->x);
          std::swap(a->y, b->y);
        }
        break;
      }
    }
    violations.push_back({static_cast<int>(i), c.kind});
  }
  return violations;
}

inline SynthTask sample_task(Rng& rng, const TaskConfig& config) {
  SynthTask task;
  Category category =
      config.category ? *config.category
                      : kAllCategories[rng.below(kAllCategories.size())];
  task.prompt.category = category;
  task.prompt.constraints = sample_constraints(category, config.n_constraints, rng);
  task.prompt.text = render_prompt_text(task.prompt.constraints);
  task.scene = build_satisfying_scene(task.prompt.constraints, rng);
  task.violations = corrupt_scene(task.scene, task.prompt.constraints,
                                  config.flaw_probability, rng);
  task.gt_verdict = task.violations.empty();
  return task;
}

inline std::vector<std::string> questions_for(const std::vector<Constraint>& constraints) {
  std::vector<std::string> qs;
  qs.reserve(constraints.size());
  for (const auto& c : constraints) qs.push_back(constraint_question(c));
  return qs;
}

inline BenchSample to_bench_sample(const SynthTask& task, std::string id) {
  BenchSample s;
  s.id = std::move(id);
  s.prompt = task.prompt;
  s.image = task.scene;
  s.gt_verdict = task.gt_verdict;
  if (!task.gt_verdict) {
    s.gt_explanation = explanation_for(task.prompt.constraints, task.violations, task.scene);
    s.questions = questions_for(task.prompt.constraints);
  }
  return s;
}

// 16 samples, one aligned and one misaligned per category.
inline std::vector<BenchSample> make_category_fixture(std::uint64_t seed) {
  std::vector<BenchSample> samples;
  Rng rng(seed);
  for (Category category : kAllCategories) {
    TaskConfig aligned{2, 0.0, category};
    TaskConfig misaligned{2, 1.0, category};
    std::string base = to_string(category);
    for (char& ch : base) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    samples.push_back(to_bench_sample(sample_task(rng, aligned), "fix-" + base + "-a"));
    samples.push_back(to_bench_sample(sample_task(rng, misaligned), "fix-" + base + "-m"));
  }
  return samples;
}

}  // namespace r3::synthenv

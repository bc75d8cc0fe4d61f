#pragma once

// Course knowledge base: concepts, sections, content variants, the question
// bank, course-file loading and validation, scheduling and variant choice.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tutor/config.hpp"
#include "tutor/enums.hpp"
#include "tutor/error.hpp"
#include "tutor/learner.hpp"
#include "tutor/question.hpp"

namespace tutor {

struct Section {
  std::string id;
  std::string title;
  int importance_weight = 1;  // 1..10
  bool operator==(const Section&) const = default;
};

struct ContentVariant {
  std::string id;
  std::string concept_id;
  std::optional<std::string> section_id;  // absent: whole concept
  Method method = Method::Text;
  std::set<LearningStyle> style_affinity;
  std::set<LearnerLevel> level_band;
  /// Text: one entry per page. Other methods: a single opaque media reference.
  std::vector<std::string> body;

  bool operator==(const ContentVariant&) const = default;
};

struct Concept {
  std::string id;
  std::string title;
  std::vector<std::string> prerequisites;
  std::vector<Section> sections;

  const Section* find_section(std::string_view id) const;
  bool operator==(const Concept&) const = default;
};

struct CourseGraph {
  int version = 1;
  std::vector<Concept> concepts;
  std::vector<ContentVariant> variants;
  QuestionBank questions;

  const Concept* find_concept(std::string_view id) const;
  const Concept& concept_at(std::string_view id) const;  // throws UnknownConcept
  const ContentVariant* find_variant(std::string_view id) const;
  std::vector<const ContentVariant*> variants_for(std::string_view concept_id) const;
  std::set<Method> methods_for(std::string_view concept_id) const;
};

/// Parses and validates a course file. Throws ParseError (with line/column
/// for malformed JSON) or ValidationError.
CourseGraph load_course(std::string_view bytes, const TutorConfig& cfg = {});

/// Parses without validating. Throws ParseError.
CourseGraph parse_course(std::string_view bytes);

/// Every broken invariant, in a stable order. Empty iff the course is valid.
std::vector<Violation> validate_course(const CourseGraph& g, const TutorConfig& cfg = {});

/// Concepts whose prerequisites are all completed and which are not completed
/// themselves. Course order, except that deferred concepts go last in
/// deferral order.
std::vector<std::string> next_concepts(const CourseGraph& g, const std::set<std::string>& completed,
                                       const std::vector<std::string>& deferred);

/// Best presentation variant for the learner. Ranking: method preference of
/// the dominant style, then level-band match, then style affinity, then
/// whole-concept over section-scoped, then file order. Excluded methods are
/// skipped; if nothing survives, the best Text variant is returned anyway.
const ContentVariant& select_variant(const CourseGraph& g, const Concept& c, const LearnerModel& m,
                                     const std::set<Method>& exclude_methods,
                                     const TutorConfig& cfg = {});

/// True for the channel's printable 7-bit set (0x20..0x7E and '\n').
bool is_printable7(std::string_view text);

}  // namespace tutor

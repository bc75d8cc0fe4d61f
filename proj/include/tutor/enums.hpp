#pragma once

// Closed enumerations shared by every module, plus their wire names.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tutor {

/// Jackson learning styles. Declaration order is the canonical tie-break order.
enum class LearningStyle : std::uint8_t { SS, GOA, EIA, CA, DLA };

enum class Method : std::uint8_t { Text, Film, DynamicView, Game };

/// Ordered Weak < Average < Good < VeryGood < Excellent.
enum class KnowledgeLevel : std::uint8_t { Weak, Average, Good, VeryGood, Excellent };

/// Ordered Weak < SlowLearner < Smart < Genius.
enum class LearnerLevel : std::uint8_t { Weak, SlowLearner, Smart, Genius };

enum class QuestionScope : std::uint8_t { Conceptual, Objective };

enum class Phase : std::uint8_t { PreTest, PostTest };

inline constexpr std::array<LearningStyle, 5> kAllStyles{
    LearningStyle::SS, LearningStyle::GOA, LearningStyle::EIA, LearningStyle::CA, LearningStyle::DLA};
inline constexpr std::array<Method, 4> kAllMethods{Method::Text, Method::Film, Method::DynamicView,
                                                   Method::Game};
inline constexpr std::array<KnowledgeLevel, 5> kAllKnowledgeLevels{
    KnowledgeLevel::Weak, KnowledgeLevel::Average, KnowledgeLevel::Good, KnowledgeLevel::VeryGood,
    KnowledgeLevel::Excellent};
inline constexpr std::array<LearnerLevel, 4> kAllLearnerLevels{
    LearnerLevel::Weak, LearnerLevel::SlowLearner, LearnerLevel::Smart, LearnerLevel::Genius};

constexpr std::size_t index_of(LearningStyle s) { return static_cast<std::size_t>(s); }
constexpr std::size_t index_of(Method m) { return static_cast<std::size_t>(m); }
constexpr std::size_t index_of(KnowledgeLevel k) { return static_cast<std::size_t>(k); }
constexpr std::size_t index_of(LearnerLevel l) { return static_cast<std::size_t>(l); }

// Wire names (course file, event log, HTTP bodies).
std::string_view to_string(LearningStyle s);
std::string_view to_string(Method m);
std::string_view to_string(KnowledgeLevel k);
std::string_view to_string(LearnerLevel l);
std::string_view to_string(QuestionScope s);
std::string_view to_string(Phase p);

std::optional<LearningStyle> parse_style(std::string_view s);
std::optional<Method> parse_method(std::string_view s);
std::optional<KnowledgeLevel> parse_knowledge_level(std::string_view s);
std::optional<LearnerLevel> parse_learner_level(std::string_view s);
std::optional<QuestionScope> parse_scope(std::string_view s);
std::optional<Phase> parse_phase(std::string_view s);

/// Human-facing label for a knowledge level ("Very good", "Excellent", ...).
std::string_view display_label(KnowledgeLevel k);

}  // namespace tutor

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "tutor/enums.hpp"

namespace tutor {

using MethodPreference = std::array<Method, 4>;

/// Tunables shared by the engine modules. Defaults are the documented
/// deployment defaults; every field may be overridden from the gateway config.
struct TutorConfig {
  /// A failed post-test is repeated while attempt <= max_repeats.
  int max_repeats = 2;
  int min_questions_per_cell = 2;
  KnowledgeLevel pass_level = KnowledgeLevel::Good;
  KnowledgeLevel skip_level = KnowledgeLevel::Excellent;
  /// Level used to pick the difficulty band before the first pre-test.
  LearnerLevel initial_level = LearnerLevel::SlowLearner;

  /// Indexed by LearnerLevel.
  std::array<std::vector<int>, 4> difficulty_bands{
      std::vector<int>{1, 2}, std::vector<int>{2, 3}, std::vector<int>{3, 4},
      std::vector<int>{4, 5}};

  /// Indexed by LearningStyle; most preferred method first.
  std::array<MethodPreference, 5> style_methods{
      MethodPreference{Method::Game, Method::DynamicView, Method::Film, Method::Text},
      MethodPreference{Method::DynamicView, Method::Text, Method::Film, Method::Game},
      MethodPreference{Method::Film, Method::DynamicView, Method::Text, Method::Game},
      MethodPreference{Method::Text, Method::DynamicView, Method::Film, Method::Game},
      MethodPreference{Method::Text, Method::Film, Method::DynamicView, Method::Game},
  };

  /// Unset means the |sections|*2 default clipped to [|sections|, 10].
  std::optional<int> pretest_count;
  std::optional<int> posttest_count;

  /// When set, every learning phase is delivered with this method
  /// regardless of style (used by the fixed-method comparison arm).
  std::optional<Method> fixed_method;

  const MethodPreference& preference(LearningStyle s) const { return style_methods[index_of(s)]; }
  /// 0 = most preferred.
  int preference_rank(LearningStyle s, Method m) const;
  const std::vector<int>& band(LearnerLevel l) const { return difficulty_bands[index_of(l)]; }

  int test_count(Phase phase, std::size_t section_count) const;

  bool operator==(const TutorConfig&) const = default;
};

int default_test_count(std::size_t section_count);

}  // namespace tutor

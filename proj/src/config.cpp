#include "tutor/config.hpp"

#include <algorithm>

namespace tutor {

int TutorConfig::preference_rank(LearningStyle s, Method m) const {
  const auto& pref = preference(s);
  for (std::size_t i = 0; i < pref.size(); ++i) {
    if (pref[i] == m) return static_cast<int>(i);
  }
  return static_cast<int>(pref.size());
}

int default_test_count(std::size_t section_count) {
  const int n = static_cast<int>(section_count);
  return std::max(n, std::min(2 * n, 10));
}

int TutorConfig::test_count(Phase phase, std::size_t section_count) const {
  const auto& configured = phase == Phase::PreTest ? pretest_count : posttest_count;
  if (configured) return std::max(*configured, static_cast<int>(section_count));
  return default_test_count(section_count);
}

}  // namespace tutor

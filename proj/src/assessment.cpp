#include "tutor/assessment.hpp"

#include <algorithm>
#include <numeric>

#include "tutor/error.hpp"
#include "tutor/rng.hpp"

namespace tutor {

std::vector<int> difficulty_band(LearnerLevel level, const TutorConfig& cfg) {
  return cfg.band(level);
}

std::vector<int> planning_band(const LearnerModel& m, const TutorConfig& cfg) {
  return cfg.band(m.learner_level.value_or(cfg.initial_level));
}

std::vector<int> section_slots(const Concept& con, int count) {
  const int n = static_cast<int>(con.sections.size());
  std::vector<int> slots(con.sections.size(), n ? count / n : 0);
  if (n == 0) return slots;
  std::vector<std::size_t> order(con.sections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return con.sections[a].importance_weight > con.sections[b].importance_weight;
  });
  for (int k = 0; k < count % n; ++k) ++slots[order[k]];
  return slots;
}

TestPlan plan_test(const QuestionBank& bank, const Concept& con, const LearnerModel& m,
                   Phase phase, int count, std::uint64_t seed, const TutorConfig& cfg) {
  if (count < static_cast<int>(con.sections.size()) || count <= 0) {
    throw Error(Errc::InvalidArgument, "test count " + std::to_string(count) +
                                           " below section count " +
                                           std::to_string(con.sections.size()));
  }
  std::vector<int> band = planning_band(m, cfg);
  std::sort(band.begin(), band.end());
  const std::vector<int> slots = section_slots(con, count);

  // Per section: questions sorted by difficulty, in the order they are asked.
  std::vector<std::vector<const Question*>> chosen(con.sections.size());
  for (std::size_t si = 0; si < con.sections.size(); ++si) {
    const Section& section = con.sections[si];
    const std::uint64_t section_seed = derive_seed(seed, si);

    std::vector<std::vector<const Question*>> pools;
    std::size_t available = 0;
    for (int d : band) {
      std::vector<const Question*> pool;
      for (const Question* q : bank.cell(con.id, section.id, d)) {
        if (!m.asked_questions.count(q->id)) pool.push_back(q);
      }
      SplitMix64(derive_seed(section_seed, static_cast<std::uint64_t>(d))).shuffle(pool);
      available += pool.size();
      pools.push_back(std::move(pool));
    }
    const auto needed = static_cast<std::size_t>(slots[si]);
    if (available < needed) throw InsufficientQuestions(section.id, band, needed, available);

    // Cycle through the difficulties so each one appears before any repeats.
    std::vector<std::size_t> next(pools.size(), 0);
    std::vector<const Question*>& picks = chosen[si];
    while (picks.size() < needed) {
      for (std::size_t d = 0; d < pools.size() && picks.size() < needed; ++d) {
        if (next[d] < pools[d].size()) picks.push_back(pools[d][next[d]++]);
      }
    }
    std::stable_sort(picks.begin(), picks.end(), [](const Question* a, const Question* b) {
      return a->difficulty < b->difficulty;
    });
  }

  TestPlan plan;
  plan.phase = phase;
  plan.concept_id = con.id;
  plan.seed = seed;
  for (std::size_t round = 0; plan.items.size() < static_cast<std::size_t>(count); ++round) {
    for (const auto& picks : chosen) {
      if (round < picks.size()) plan.items.push_back(picks[round]->id);
    }
  }
  return plan;
}

AssessmentOutcome grade(const TestPlan& plan, const QuestionBank& bank,
                        const std::vector<int>& answers) {
  if (answers.size() != plan.items.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(answers.size()) + " answer(s) for " +
                                          std::to_string(plan.items.size()) + " question(s)");
  }
  AssessmentOutcome out;
  out.phase = plan.phase;
  Tally overall, conceptual, objective;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    const Question& q = bank.at(plan.items[i]);
    const int chosen = answers[i];
    if (chosen < 0 || chosen >= static_cast<int>(q.choices.size()))
      throw Error(Errc::ChoiceOutOfRange, "choice " + std::to_string(chosen) + " for " + q.id);
    const bool correct = chosen == q.correct;
    const long earned = correct ? q.points : 0;
    Tally& scope = q.scope == QuestionScope::Conceptual ? conceptual : objective;
    for (Tally* t : {&overall, &scope, &out.per_section[q.section_id]}) {
      t->earned += earned;
      t->max += q.points;
    }
    out.answers.push_back({q.id, chosen, correct});
  }
  const PhaseScore s = score_tallies(overall, conceptual, objective);
  out.score = s.score;
  out.level = s.level;
  out.conceptual_level = s.conceptual_level;
  out.objective_level = s.objective_level;
  return out;
}

}  // namespace tutor

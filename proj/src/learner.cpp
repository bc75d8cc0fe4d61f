#include "tutor/learner.hpp"

#include <algorithm>
#include <set>

#include "json_reader.hpp"
#include "tutor/error.hpp"

namespace tutor {

Questionnaire load_questionnaire(std::string_view bytes) {
  const Json doc = detail::parse_document(bytes);
  detail::ObjectReader root(doc, "$");
  Questionnaire q;
  const Json& items = root.array("items");
  root.optional("title");
  root.finish();

  std::set<std::string> item_ids;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string path = "$.items[" + std::to_string(i) + "]";
    detail::ObjectReader r(items[i], path);
    ProfilerItem item;
    item.id = r.string("id");
    item.prompt = r.string("prompt");
    const Json& options = r.array("options");
    r.finish();
    if (!item_ids.insert(item.id).second) throw ParseError(path + ": duplicate item id " + item.id);
    std::set<std::string> option_ids;
    for (std::size_t k = 0; k < options.size(); ++k) {
      const std::string opath = path + ".options[" + std::to_string(k) + "]";
      detail::ObjectReader o(options[k], opath);
      ProfilerOption opt;
      opt.id = o.string("id");
      opt.label = o.string("label");
      const Json& inc = o.object("increments");
      o.finish();
      if (!option_ids.insert(opt.id).second)
        throw ParseError(opath + ": duplicate option id " + opt.id);
      for (auto it = inc.begin(); it != inc.end(); ++it) {
        auto style = parse_style(it.key());
        if (!style) throw ParseError(opath + ".increments." + it.key() + ": unknown style");
        const long long v = detail::expect_integer(it.value(), opath + ".increments." + it.key());
        if (v < 0) throw ParseError(opath + ".increments." + it.key() + ": must be >= 0");
        opt.increments[index_of(*style)] = static_cast<int>(v);
      }
      item.options.push_back(std::move(opt));
    }
    if (item.options.empty()) throw ParseError(path + ".options: must not be empty");
    q.items.push_back(std::move(item));
  }
  return q;
}

StyleProfile profile_styles(const std::vector<ProfilerAnswer>& answers, const Questionnaire& q) {
  std::array<long, 5> tally{};
  std::set<std::string> answered;
  for (const auto& a : answers) {
    auto item = std::find_if(q.items.begin(), q.items.end(),
                             [&](const ProfilerItem& it) { return it.id == a.item; });
    if (item == q.items.end()) throw Error(Errc::UnknownItem, "unknown profiler item " + a.item);
    auto opt = std::find_if(item->options.begin(), item->options.end(),
                            [&](const ProfilerOption& o) { return o.id == a.option; });
    if (opt == item->options.end())
      throw Error(Errc::UnknownOption, "unknown option " + a.option + " for item " + a.item);
    if (!answered.insert(a.item).second)
      throw Error(Errc::DuplicateAnswer, "item " + a.item + " answered twice");
    for (std::size_t s = 0; s < tally.size(); ++s) tally[s] += opt->increments[s];
  }

  StyleProfile p;
  long total = 0;
  for (long t : tally) total += t;
  if (total == 0) return p;

  std::size_t best = 0;
  for (std::size_t s = 0; s < tally.size(); ++s) {
    p.weights[s] = static_cast<double>(tally[s]) / static_cast<double>(total);
    if (tally[s] > tally[best]) best = s;  // strict: earlier style wins ties
  }
  p.dominant = kAllStyles[best];
  return p;
}

KnowledgeLevel classify_knowledge(int score) {
  if (score < 0 || score > 100)
    throw Error(Errc::OutOfRange, "score " + std::to_string(score) + " outside 0..100");
  if (score >= 86) return KnowledgeLevel::Excellent;
  if (score >= 71) return KnowledgeLevel::VeryGood;
  if (score >= 51) return KnowledgeLevel::Good;
  if (score >= 31) return KnowledgeLevel::Average;
  return KnowledgeLevel::Weak;
}

LearnerLevel derive_learner_level(KnowledgeLevel pretest, std::optional<LearnerLevel> prior) {
  LearnerLevel target = LearnerLevel::Weak;
  switch (pretest) {
    case KnowledgeLevel::Excellent: target = LearnerLevel::Genius; break;
    case KnowledgeLevel::VeryGood:
    case KnowledgeLevel::Good: target = LearnerLevel::Smart; break;
    case KnowledgeLevel::Average: target = LearnerLevel::SlowLearner; break;
    case KnowledgeLevel::Weak: target = LearnerLevel::Weak; break;
  }
  if (!prior) return target;
  const int from = static_cast<int>(*prior);
  const int to = static_cast<int>(target);
  return static_cast<LearnerLevel>(from + std::clamp(to - from, -1, 1));
}

int normalized_score(long earned, long max) {
  if (max <= 0) throw Error(Errc::EmptyPhase, "no points available");
  return static_cast<int>((200 * earned + max) / (2 * max));
}

std::string_view to_string(ConceptStatus s) {
  switch (s) {
    case ConceptStatus::NotStarted: return "not_started";
    case ConceptStatus::InProgress: return "in_progress";
    case ConceptStatus::Completed: return "completed";
    case ConceptStatus::Skipped: return "skipped";
    case ConceptStatus::Deferred: return "deferred";
  }
  return "not_started";
}

std::optional<ConceptStatus> parse_concept_status(std::string_view s) {
  for (auto v : {ConceptStatus::NotStarted, ConceptStatus::InProgress, ConceptStatus::Completed,
                 ConceptStatus::Skipped, ConceptStatus::Deferred}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

PhaseScore score_tallies(const Tally& overall, const Tally& conceptual, const Tally& objective) {
  PhaseScore out;
  out.score = normalized_score(overall.earned, overall.max);
  out.level = classify_knowledge(out.score);
  out.conceptual_level = conceptual.max > 0
                             ? classify_knowledge(normalized_score(conceptual.earned, conceptual.max))
                             : out.level;
  out.objective_level = objective.max > 0
                            ? classify_knowledge(normalized_score(objective.earned, objective.max))
                            : out.level;
  return out;
}

std::set<std::string> LearnerModel::completed_concepts() const {
  std::set<std::string> done;
  for (const auto& [id, rec] : concept_records) {
    if (rec.status == ConceptStatus::Completed || rec.status == ConceptStatus::Skipped)
      done.insert(id);
  }
  return done;
}

void begin_phase(LearnerModel& m) { m.running = RunningTally{}; }

void update_on_answer(LearnerModel& m, const Question& q, bool correct) {
  if (!m.running) throw Error(Errc::NoActivePhase, "no phase in progress");
  auto& r = *m.running;
  if (std::find(r.recorded.begin(), r.recorded.end(), q.id) != r.recorded.end())
    throw Error(Errc::InvalidArgument, "question " + q.id + " already answered in this phase");
  const long earned = correct ? q.points : 0;
  Tally& scope = q.scope == QuestionScope::Conceptual ? r.conceptual : r.objective;
  r.earned += earned;
  r.max += q.points;
  scope.earned += earned;
  scope.max += q.points;
  r.recorded.push_back(q.id);
  m.asked_questions.insert(q.id);
}

PhaseScore finalize_phase(LearnerModel& m, const std::string& concept_id) {
  if (!m.running) throw Error(Errc::NoActivePhase, "no phase in progress");
  const auto& r = *m.running;
  if (r.max == 0) throw Error(Errc::EmptyPhase, "phase has no answered questions");
  const PhaseScore s = score_tallies({r.earned, r.max}, r.conceptual, r.objective);
  auto& rec = m.concept_records[concept_id];
  rec.score = s.score;
  rec.level = s.level;
  rec.conceptual_level = s.conceptual_level;
  rec.objective_level = s.objective_level;
  m.running.reset();
  return s;
}

}  // namespace tutor

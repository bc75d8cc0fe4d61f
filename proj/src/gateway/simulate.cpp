#include "tutor/gateway/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "tutor/error.hpp"

namespace tutor::gateway {

double SimulatedLearner::ability_for(const std::string& section_id) const {
  auto it = ability.find(section_id);
  return it == ability.end() ? default_ability : it->second;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double p_correct(const SimulatedLearner& l, const Question& q, double attained_bonus) {
  const double g = 1.0 / static_cast<double>(q.choices.size());
  return g + (1.0 - g) * logistic(l.ability_for(q.section_id) + attained_bonus - (q.difficulty - 3));
}

int simulate_choice(const SimulatedLearner& l, const Question& q, double attained_bonus, SplitMix64& rng) {
  if (rng.uniform() < p_correct(l, q, attained_bonus)) return q.correct;
  const int wrong = static_cast<int>(rng.below(q.choices.size() - 1));
  return wrong < q.correct ? wrong : wrong + 1;
}

SessionTrace simulate_session(const SessionEngine& engine, LearnerModel& m, const SimulatedLearner& l,
                              const std::string& concept_id, const std::string& session_id,
                              std::uint64_t seed, SplitMix64& rng) {
  const CourseGraph& course = engine.course();
  const Method favourite = engine.config().preference(l.style)[0];
  SessionTrace trace;
  trace.session_id = session_id;
  trace.concept_id = concept_id;

  auto started = engine.start(m, concept_id, session_id, seed);
  Session s = std::move(started.session);
  auto absorb = [&](const std::vector<Prompt>& prompts) {
    for (const auto& p : prompts) {
      if (const auto* r = std::get_if<PhaseResult>(&p)) {
        if (r->phase == Phase::PreTest) trace.pretest_score = r->score;
        else trace.posttest_scores.push_back(r->score);
      }
    }
    if (s.state == SessionState::Learning && static_cast<int>(trace.methods.size()) < s.attempt)
      trace.methods.push_back(course.find_variant(*s.current_variant)->method);
  };
  absorb(started.prompts);

  while (!is_terminal(s.state)) {
    if (s.state == SessionState::Learning) {
      absorb(engine.submit(s, m, Input::next()));
      continue;
    }
    const Question& q = course.questions.at(s.current_plan->items[s.plan_cursor]);
    const bool matched = s.state == SessionState::PostTest && !trace.methods.empty() &&
                         trace.methods.back() == favourite;
    const int choice = simulate_choice(l, q, matched ? l.match_bonus : 0.0, rng);
    absorb(engine.submit(s, m, Input::answer(choice)));
  }
  trace.status = s.state;
  trace.attempts = m.concept_records[concept_id].attempts;
  trace.transcript = std::move(s.transcript);
  return trace;
}

SimulatedLearner make_learner(const CourseGraph& course, const CohortSpec& spec, int index) {
  SimulatedLearner l;
  l.rng_seed = derive_seed(spec.seed, static_cast<std::uint64_t>(index));
  SplitMix64 rng(derive_seed(l.rng_seed, 0));
  l.style = kAllStyles[rng.below(kAllStyles.size())];
  const double base = std::clamp(spec.ability_mean + spec.ability_sd * rng.normal(), -3.0, 3.0);
  l.default_ability = base;
  for (const auto& c : course.concepts) {
    for (const auto& sec : c.sections)
      l.ability[sec.id] = std::clamp(base + spec.section_sd * rng.normal(), -3.0, 3.0);
  }
  l.match_bonus = spec.match_bonus;
  return l;
}

CohortReport run_cohort(const CourseGraph& course, const TutorConfig& cfg, const CohortSpec& spec) {
  if (spec.learners < 1) throw Error(Errc::InvalidArgument, "a cohort needs at least one learner");
  CohortReport report;
  report.spec = spec;
  long post_sum = 0;
  int finished = 0;
  int delivered = 0;
  long attempt_sum = 0;

  for (int i = 0; i < spec.learners; ++i) {
    const SimulatedLearner l = make_learner(course, spec, i);
    TutorConfig learner_cfg = cfg;
    if (!spec.style_match) learner_cfg.fixed_method = cfg.preference(l.style).back();
    const SessionEngine engine(course, learner_cfg);

    LearnerTrace lt;
    lt.index = i;
    lt.seed = l.rng_seed;
    lt.style = l.style;
    lt.base_ability = l.default_ability;

    LearnerModel m;
    m.learner_id = "sim" + std::to_string(i);
    m.style_profile.weights.fill(0.0);
    m.style_profile.weights[index_of(l.style)] = 1.0;
    m.style_profile.dominant = l.style;

    SplitMix64 rng(derive_seed(l.rng_seed, 1));
    std::set<std::string> tried;
    for (int n = 1;; ++n) {
      std::string next;
      for (const auto& c : next_concepts(course, m.completed_concepts(), m.deferred)) {
        if (!tried.count(c)) {
          next = c;
          break;
        }
      }
      if (next.empty()) break;
      tried.insert(next);
      const std::string sid = m.learner_id + ".s" + std::to_string(n);
      SessionTrace t;
      try {
        t = simulate_session(engine, m, l, next, sid, derive_seed(l.rng_seed, 100 + n), rng);
      } catch (const InsufficientQuestions&) {
        continue;  // pre-test cannot be planned; leave the concept
      }
      t.transcript.clear();
      for (int score : t.posttest_scores) post_sum += score;
      report.posttests += static_cast<int>(t.posttest_scores.size());
      ++report.sessions;
      if (t.status == SessionState::Completed || t.status == SessionState::Skipped) ++finished;
      if (t.attempts > 0) {
        ++delivered;
        attempt_sum += t.attempts;
      }
      lt.sessions.push_back(std::move(t));
    }
    report.traces.push_back(std::move(lt));
  }
  if (report.posttests > 0)
    report.mean_posttest_score = static_cast<double>(post_sum) / report.posttests;
  report.completion_rate = report.sessions ? static_cast<double>(finished) / report.sessions : 0.0;
  report.mean_attempts = delivered ? static_cast<double>(attempt_sum) / delivered : 0.0;
  return report;
}

Json to_json(const CohortReport& r) {
  Json traces = Json::array();
  for (const auto& lt : r.traces) {
    Json sessions = Json::array();
    for (const auto& s : lt.sessions) {
      Json methods = Json::array();
      for (Method m : s.methods) methods.push_back(to_string(m));
      sessions.push_back(Json{{"session_id", s.session_id},
                              {"concept_id", s.concept_id},
                              {"status", to_string(s.status)},
                              {"attempts", s.attempts},
                              {"pretest_score", s.pretest_score},
                              {"posttest_scores", s.posttest_scores},
                              {"methods", std::move(methods)}});
    }
    traces.push_back(Json{{"index", lt.index},
                          {"seed", lt.seed},
                          {"style", to_string(lt.style)},
                          {"base_ability", lt.base_ability},
                          {"sessions", std::move(sessions)}});
  }
  return Json{{"name", r.spec.name},
              {"learners", r.spec.learners},
              {"ability_mean", r.spec.ability_mean},
              {"style_match", r.spec.style_match},
              {"match_bonus", r.spec.match_bonus},
              {"seed", r.spec.seed},
              {"sessions", r.sessions},
              {"posttests", r.posttests},
              {"mean_posttest_score", r.mean_posttest_score ? Json(*r.mean_posttest_score) : Json(nullptr)},
              {"completion_rate", r.completion_rate},
              {"mean_attempts", r.mean_attempts},
              {"traces", std::move(traces)}};
}

namespace {

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string format_table(const std::vector<CohortReport>& reports) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %8s %8s %5s %8s %10s %10s %13s\n", "cohort", "learners",
                "ability", "match", "sessions", "mean_post", "completion", "mean_attempts");
  out << line;
  for (const auto& r : reports) {
    const std::string post = r.mean_posttest_score ? fixed(*r.mean_posttest_score, 2) : "-";
    std::snprintf(line, sizeof line, "%-16s %8d %8.2f %5s %8d %10s %10.3f %13.3f\n", r.spec.name.c_str(),
                  r.spec.learners, r.spec.ability_mean, r.spec.style_match ? "on" : "off", r.sessions,
                  post.c_str(), r.completion_rate, r.mean_attempts);
    out << line;
  }
  return out.str();
}

std::string format_csv(const std::vector<CohortReport>& reports) {
  std::ostringstream out;
  out << "cohort,learners,ability_mean,style_match,sessions,mean_posttest,completion_rate,mean_attempts\n";
  for (const auto& r : reports) {
    out << r.spec.name << ',' << r.spec.learners << ',' << fixed(r.spec.ability_mean, 2) << ','
        << (r.spec.style_match ? 1 : 0) << ',' << r.sessions << ','
        << (r.mean_posttest_score ? fixed(*r.mean_posttest_score, 4) : "") << ','
        << fixed(r.completion_rate, 4) << ',' << fixed(r.mean_attempts, 4) << '\n';
  }
  return out.str();
}

}  // namespace tutor::gateway

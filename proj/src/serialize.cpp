#include "tutor/serialize.hpp"

#include "tutor/error.hpp"

namespace tutor {

namespace {

template <typename T>
T parse_enum(const Json& j, std::optional<T> (*parse)(std::string_view), const char* what) {
  const auto s = j.get<std::string>();
  auto v = parse(s);
  if (!v) throw Error(Errc::InvalidArgument, std::string("unknown ") + what + " '" + s + "'");
  return *v;
}

Json tally_json(const Tally& t) { return Json{{"earned", t.earned}, {"max", t.max}}; }
Tally tally_from(const Json& j) { return {j.at("earned").get<long>(), j.at("max").get<long>()}; }

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const StyleProfile& p) {
  Json weights = Json::object();
  for (LearningStyle s : kAllStyles) weights[std::string(to_string(s))] = p.weight(s);
  return Json{{"weights", std::move(weights)}, {"dominant", to_string(p.dominant)}};
}

StyleProfile style_profile_from_json(const Json& j) {
  StyleProfile p;
  for (LearningStyle s : kAllStyles)
    p.weights[index_of(s)] = j.at("weights").at(std::string(to_string(s))).get<double>();
  p.dominant = parse_enum(j.at("dominant"), parse_style, "style");
  return p;
}

Json to_json(const ConceptRecord& r) {
  return Json{{"conceptual_level", to_string(r.conceptual_level)},
              {"objective_level", to_string(r.objective_level)},
              {"level", to_string(r.level)},
              {"score", r.score},
              {"attempts", r.attempts},
              {"status", to_string(r.status)}};
}

Json to_json(const LearnerModel& m) {
  Json records = Json::object();
  for (const auto& [id, rec] : m.concept_records) records[id] = to_json(rec);
  Json running = nullptr;
  if (m.running) {
    running = Json{{"earned", m.running->earned},
                   {"max", m.running->max},
                   {"conceptual", tally_json(m.running->conceptual)},
                   {"objective", tally_json(m.running->objective)},
                   {"recorded", m.running->recorded}};
  }
  return Json{{"learner_id", m.learner_id},
              {"style_profile", to_json(m.style_profile)},
              {"learner_level", m.learner_level ? Json(to_string(*m.learner_level)) : Json(nullptr)},
              {"concept_records", std::move(records)},
              {"asked_questions", m.asked_questions},
              {"running", std::move(running)},
              {"deferred", m.deferred},
              {"active_session", optional_json(m.active_session)}};
}

LearnerModel learner_model_from_json(const Json& j) {
  LearnerModel m;
  m.learner_id = j.at("learner_id").get<std::string>();
  m.style_profile = style_profile_from_json(j.at("style_profile"));
  if (!j.at("learner_level").is_null())
    m.learner_level = parse_enum(j.at("learner_level"), parse_learner_level, "learner level");
  for (auto it = j.at("concept_records").begin(); it != j.at("concept_records").end(); ++it) {
    const Json& r = it.value();
    ConceptRecord rec;
    rec.conceptual_level = parse_enum(r.at("conceptual_level"), parse_knowledge_level, "level");
    rec.objective_level = parse_enum(r.at("objective_level"), parse_knowledge_level, "level");
    rec.level = parse_enum(r.at("level"), parse_knowledge_level, "level");
    rec.score = r.at("score").get<int>();
    rec.attempts = r.at("attempts").get<int>();
    rec.status = parse_enum(r.at("status"), parse_concept_status, "status");
    m.concept_records.emplace(it.key(), rec);
  }
  for (const auto& q : j.at("asked_questions")) m.asked_questions.insert(q.get<std::string>());
  if (!j.at("running").is_null()) {
    const Json& r = j.at("running");
    RunningTally t;
    t.earned = r.at("earned").get<long>();
    t.max = r.at("max").get<long>();
    t.conceptual = tally_from(r.at("conceptual"));
    t.objective = tally_from(r.at("objective"));
    t.recorded = r.at("recorded").get<std::vector<std::string>>();
    m.running = std::move(t);
  }
  m.deferred = j.at("deferred").get<std::vector<std::string>>();
  if (!j.at("active_session").is_null())
    m.active_session = j.at("active_session").get<std::string>();
  return m;
}

Json to_json(const TestPlan& p) {
  return Json{{"phase", to_string(p.phase)},
              {"concept_id", p.concept_id},
              {"items", p.items},
              {"seed", p.seed}};
}

TestPlan test_plan_from_json(const Json& j) {
  TestPlan p;
  p.phase = parse_enum(j.at("phase"), parse_phase, "phase");
  p.concept_id = j.at("concept_id").get<std::string>();
  p.items = j.at("items").get<std::vector<std::string>>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

Json to_json(const Session& s) {
  Json methods = Json::array();
  for (Method m : s.used_methods) methods.push_back(to_string(m));
  Json transcript = Json::array();
  for (const auto& e : s.transcript)
    transcript.push_back(Json{{"kind", to_string(e.kind)}, {"payload", e.payload}});
  Json history = Json::array();
  for (SessionState st : s.history) history.push_back(to_string(st));
  return Json{{"session_id", s.session_id},
              {"learner_id", s.learner_id},
              {"concept_id", s.concept_id},
              {"state", to_string(s.state)},
              {"attempt", s.attempt},
              {"seed", s.seed},
              {"plans_drawn", s.plans_drawn},
              {"current_plan", s.current_plan ? to_json(*s.current_plan) : Json(nullptr)},
              {"plan_cursor", s.plan_cursor},
              {"phase_answers", s.phase_answers},
              {"current_variant", optional_json(s.current_variant)},
              {"content_cursor", s.content_cursor},
              {"used_methods", std::move(methods)},
              {"last_level", to_string(s.last_level)},
              {"close_reason", s.close_reason},
              {"transcript", std::move(transcript)},
              {"history", std::move(history)}};
}

Session session_from_json(const Json& j) {
  Session s;
  s.session_id = j.at("session_id").get<std::string>();
  s.learner_id = j.at("learner_id").get<std::string>();
  s.concept_id = j.at("concept_id").get<std::string>();
  s.state = parse_enum(j.at("state"), parse_session_state, "state");
  s.attempt = j.at("attempt").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.plans_drawn = j.at("plans_drawn").get<int>();
  if (!j.at("current_plan").is_null()) s.current_plan = test_plan_from_json(j.at("current_plan"));
  s.plan_cursor = j.at("plan_cursor").get<std::size_t>();
  s.phase_answers = j.at("phase_answers").get<std::vector<int>>();
  if (!j.at("current_variant").is_null())
    s.current_variant = j.at("current_variant").get<std::string>();
  s.content_cursor = j.at("content_cursor").get<std::size_t>();
  for (const auto& m : j.at("used_methods"))
    s.used_methods.insert(parse_enum(m, parse_method, "method"));
  s.last_level = parse_enum(j.at("last_level"), parse_knowledge_level, "level");
  s.close_reason = j.at("close_reason").get<std::string>();
  for (const auto& e : j.at("transcript"))
    s.transcript.push_back({parse_enum(e.at("kind"), parse_event_kind, "event kind"),
                            e.at("payload")});
  for (const auto& st : j.at("history"))
    s.history.push_back(parse_enum(st, parse_session_state, "state"));
  return s;
}

namespace {

struct PromptJson {
  Json operator()(const QuestionPrompt& q) const {
    return Json{{"type", "question"},
                {"question_id", q.question_id},
                {"text", q.text},
                {"choices", q.choices}};
  }
  Json operator()(const ContentPage& p) const {
    return Json{{"type", "content"},
                {"body", p.body},
                {"media", p.media},
                {"page", p.page},
                {"total", p.total}};
  }
  Json operator()(const PhaseResult& r) const {
    return Json{{"type", "phase_result"},
                {"phase", to_string(r.phase)},
                {"score", r.score},
                {"level", to_string(r.level)},
                {"label", display_label(r.level)}};
  }
  Json operator()(const SessionResult& r) const {
    return Json{{"type", "session_result"},
                {"status", to_string(r.status)},
                {"level", to_string(r.level)},
                {"label", display_label(r.level)}};
  }
};

}  // namespace

Json to_json(const Prompt& p) { return std::visit(PromptJson{}, p); }

Json to_json(const AssessmentOutcome& o) {
  Json sections = Json::object();
  for (const auto& [id, t] : o.per_section) sections[id] = tally_json(t);
  Json answers = Json::array();
  for (const auto& a : o.answers)
    answers.push_back(Json{{"question_id", a.question_id}, {"chosen", a.chosen}, {"correct", a.correct}});
  return Json{{"phase", to_string(o.phase)},
              {"score", o.score},
              {"level", to_string(o.level)},
              {"conceptual_level", to_string(o.conceptual_level)},
              {"objective_level", to_string(o.objective_level)},
              {"per_section", std::move(sections)},
              {"answers", std::move(answers)}};
}

}  // namespace tutor

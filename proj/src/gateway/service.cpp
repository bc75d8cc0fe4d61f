#include "tutor/gateway/service.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "tutor/error.hpp"
#include "tutor/rng.hpp"
#include "tutor/serialize.hpp"

namespace tutor::gateway {

namespace {

constexpr std::string_view kHelpText =
    "Reply START to begin the next concept (or START <concept>), A-D to answer, "
    "NEXT for the next page, STATUS for progress.";

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

int learner_number(const std::string& id) {
  if (id.size() < 2 || id[0] != 'L') return 0;
  if (!std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; })) return 0;
  return id.size() > 10 ? 0 : std::stoi(id.substr(1));
}

}  // namespace

std::string learner_of_session(const std::string& session_id) {
  const auto dot = session_id.find('.');
  const bool ok = dot != std::string::npos && dot > 0 && dot + 2 < session_id.size() &&
                  session_id[dot + 1] == 's' &&
                  std::all_of(session_id.begin() + static_cast<std::ptrdiff_t>(dot) + 2,
                              session_id.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (!ok || !is_valid_learner_id(session_id.substr(0, dot)))
    throw Error(Errc::UnknownSession, "unknown session " + session_id);
  return session_id.substr(0, dot);
}

TutorService::TutorService(CourseGraph course, Questionnaire profiler, TutorConfig cfg,
                           std::filesystem::path data_dir, StoreOptions store_options)
    : course_(std::move(course)),
      profiler_(std::move(profiler)),
      cfg_(std::move(cfg)),
      log_(std::move(data_dir), std::move(store_options)),
      engine_(course_, cfg_) {}

std::uint64_t TutorService::session_seed(const std::string& session_id) {
  return derive_seed(hash_string(session_id), 0);
}

std::string TutorService::session_id_for(const std::string& learner_id, int n) {
  return learner_id + ".s" + std::to_string(n);
}

std::string TutorService::sms_learner_id(const std::string& from) {
  std::string digits;
  for (char c : from)
    if (c >= '0' && c <= '9') digits += c;
  if (digits.empty() || digits.size() > 32)
    throw Error(Errc::InvalidArgument, "sender '" + from + "' has no phone number");
  return "sms-" + digits;
}

std::shared_ptr<TutorService::Slot> TutorService::slot(const std::string& learner_id) {
  if (!log_.has_learner(learner_id))
    throw Error(Errc::UnknownLearner, "unknown learner " + learner_id);
  std::lock_guard lock(slots_mutex_);
  auto& s = slots_[learner_id];
  if (!s) s = std::make_shared<Slot>();
  return s;
}

void TutorService::load(const std::string& learner_id, Slot& s) {
  if (s.loaded) return;
  const auto events = log_.read(learner_id);
  LearnerState start;
  start.model.learner_id = learner_id;
  s.state = replay(engine_, std::move(start), events);
  s.sessions_started = static_cast<int>(std::count_if(
      events.begin(), events.end(), [](const Event& e) { return e.kind == EventKind::SessionStarted; }));
  s.loaded = true;
}

void TutorService::persist(const std::string& learner_id, Slot& slot, LearnerState next,
                           const std::vector<TranscriptEntry>& entries) {
  try {
    for (const auto& entry : entries) {
      Event e;
      e.learner_id = learner_id;
      e.kind = entry.kind;
      e.payload = entry.payload;
      next.as_of_sequence = log_.append(std::move(e));
    }
  } catch (...) {
    slot.loaded = false;  // the log is the truth; re-read it next time
    throw;
  }
  slot.state = std::move(next);
}

std::string TutorService::create_learner(const std::string& name) {
  std::lock_guard lock(create_mutex_);
  int next = 1;
  for (const auto& id : log_.list_learners()) next = std::max(next, learner_number(id) + 1);
  char buf[16];
  std::snprintf(buf, sizeof buf, "L%04d", next);
  const std::string id = buf;
  log_.create_learner(id);
  std::ofstream meta(log_.directory() / "learners" / (id + ".meta.json"));
  meta << Json{{"name", name}}.dump() << "\n";
  return id;
}

StyleProfile TutorService::submit_profile(const std::string& learner_id,
                                          const std::vector<ProfilerAnswer>& answers) {
  auto s = slot(learner_id);
  std::lock_guard lock(s->mutex);
  load(learner_id, *s);
  const StyleProfile profile = profile_styles(answers, profiler_);
  Json list = Json::array();
  for (const auto& a : answers) list.push_back(Json{{"item", a.item}, {"option", a.option}});
  LearnerState next = s->state;
  next.model.style_profile = profile;
  persist(learner_id, *s, std::move(next),
          {{EventKind::ProfileSubmitted,
            Json{{"answers", std::move(list)}, {"profile", to_json(profile)}}}});
  return profile;
}

Progress TutorService::progress(const std::string& learner_id) {
  auto s = slot(learner_id);
  std::lock_guard lock(s->mutex);
  load(learner_id, *s);
  const LearnerModel& m = s->state.model;
  Progress p;
  p.learner_id = learner_id;
  std::ifstream meta(log_.directory() / "learners" / (learner_id + ".meta.json"));
  if (meta) {
    try {
      p.name = Json::parse(meta).value("name", "");
    } catch (const nlohmann::json::exception&) {
    }
  }
  p.learner_level = m.learner_level;
  p.style_profile = m.style_profile;
  p.concept_records = m.concept_records;
  p.active_session = m.active_session;
  p.next_concepts = next_concepts(course_, m.completed_concepts(), m.deferred);
  return p;
}

Step TutorService::start_locked(const std::string& learner_id, Slot& s, const std::string& concept_id) {
  std::string target = concept_id;
  if (target.empty()) {
    const auto eligible = next_concepts(course_, s.state.model.completed_concepts(), s.state.model.deferred);
    if (eligible.empty()) throw Error(Errc::ConceptNotEligible, "no concept is eligible");
    target = eligible.front();
  }
  const std::string session_id = session_id_for(learner_id, s.sessions_started + 1);
  LearnerState next = s.state;
  auto started = engine_.start(next.model, target, session_id, session_seed(session_id));
  const auto entries = started.session.transcript;
  next.session = std::move(started.session);
  persist(learner_id, s, std::move(next), entries);
  ++s.sessions_started;
  return {session_id, s.state.session->state, std::move(started.prompts)};
}

Step TutorService::start_session(const std::string& learner_id, const std::string& concept_id) {
  auto s = slot(learner_id);
  std::lock_guard lock(s->mutex);
  load(learner_id, *s);
  return start_locked(learner_id, *s, concept_id);
}

Step TutorService::submit_locked(const std::string& learner_id, Slot& s,
                                 const std::string& session_id, const Input& input) {
  if (!s.state.session || s.state.session->session_id != session_id) {
    if (s.closed.count(session_id))
      throw Error(Errc::SessionTerminal, "session " + session_id + " has ended");
    throw Error(Errc::UnknownSession, "unknown session " + session_id);
  }
  LearnerState next = s.state;
  Session& session = *next.session;
  const std::size_t before = session.transcript.size();
  auto prompts = engine_.submit(session, next.model, input);
  const std::vector<TranscriptEntry> entries(
      session.transcript.begin() + static_cast<std::ptrdiff_t>(before), session.transcript.end());
  const SessionState state = session.state;
  if (is_terminal(state)) {
    s.closed[session_id] = session;
    next.session.reset();
  }
  persist(learner_id, s, std::move(next), entries);
  return {session_id, state, std::move(prompts)};
}

Step TutorService::submit(const std::string& session_id, const Input& input) {
  const std::string learner_id = learner_of_session(session_id);
  if (!log_.has_learner(learner_id)) throw Error(Errc::UnknownSession, "unknown session " + session_id);
  auto s = slot(learner_id);
  std::lock_guard lock(s->mutex);
  load(learner_id, *s);
  return submit_locked(learner_id, *s, session_id, input);
}

Step TutorService::view(const std::string& session_id) {
  const std::string learner_id = learner_of_session(session_id);
  if (!log_.has_learner(learner_id)) throw Error(Errc::UnknownSession, "unknown session " + session_id);
  auto s = slot(learner_id);
  std::lock_guard lock(s->mutex);
  load(learner_id, *s);
  if (s->state.session && s->state.session->session_id == session_id)
    return {session_id, s->state.session->state, {engine_.current_prompt(*s->state.session)}};
  auto it = s->closed.find(session_id);
  if (it == s->closed.end()) throw Error(Errc::UnknownSession, "unknown session " + session_id);
  return {session_id, it->second.state, {engine_.current_prompt(it->second)}};
}

// ---------------------------------------------------------------------------
// Text channel

std::string TutorService::find_concept(const std::string& ref) const {
  for (const auto& c : course_.concepts) {
    if (upper(c.id) == ref || upper(c.title) == ref) return c.id;
  }
  return {};
}

std::string TutorService::sms_reply(const std::string& learner_id, Slot& s,
                                    const channel::Command& cmd, std::vector<std::string>& out) {
  using namespace channel;
  const auto render_all = [&out](const std::vector<Prompt>& prompts) {
    for (const auto& p : prompts) out.push_back(render_prompt(p));
  };
  const LearnerModel& m = s.state.model;
  const auto done = [&] {
    return std::to_string(m.completed_concepts().size()) + "/" + std::to_string(course_.concepts.size());
  };

  if (std::holds_alternative<HelpCmd>(cmd)) return std::string(kHelpText);
  if (std::holds_alternative<UnknownCmd>(cmd)) return "Unknown command. Reply HELP";

  if (std::holds_alternative<StatusCmd>(cmd)) {
    if (!s.state.session) return "No active session. Concepts done: " + done() + ". Reply START";
    const Session& session = *s.state.session;
    std::string state(to_string(session.state));
    std::replace(state.begin(), state.end(), '_', '-');
    return "Concept " + session.concept_id + ": " + state + ", attempt " +
           std::to_string(session.attempt) + ". Concepts done: " + done() + ".";
  }

  if (const auto* start = std::get_if<StartCmd>(&cmd)) {
    if (s.state.session) {
      out.push_back("A session is already in progress.");
      out.push_back(render_prompt(engine_.current_prompt(*s.state.session)));
      return {};
    }
    std::string concept_id;
    if (!start->concept_ref.empty()) {
      concept_id = find_concept(start->concept_ref);
      if (concept_id.empty()) return "Unknown concept " + start->concept_ref + ". Reply HELP";
    } else if (next_concepts(course_, m.completed_concepts(), m.deferred).empty()) {
      return "All concepts are done. Well done!";
    }
    try {
      render_all(start_locked(learner_id, s, concept_id).prompts);
    } catch (const Error& e) {
      if (e.code() == Errc::ConceptNotEligible)
        return "Concept " + concept_id + " is locked. Finish its prerequisites first.";
      if (e.code() == Errc::InsufficientQuestions) return "Concept " + concept_id + " is unavailable.";
      throw;
    }
    return {};
  }

  if (!s.state.session) return "No active session. Reply START";
  const std::string session_id = s.state.session->session_id;
  const SessionState state = s.state.session->state;
  Input input = Input::next();
  if (const auto* a = std::get_if<AnswerCmd>(&cmd)) input = Input::answer(a->index());
  try {
    render_all(submit_locked(learner_id, s, session_id, input).prompts);
  } catch (const Error& e) {
    if (e.code() == Errc::WrongInputKind)
      return state == SessionState::Learning ? "Reply NEXT to continue" : "Reply with a letter A-D";
    if (e.code() == Errc::ChoiceOutOfRange) {
      const auto& q = std::get<QuestionPrompt>(engine_.current_prompt(*s.state.session));
      return std::string("Choose one of A-") + static_cast<char>('A' + q.choices.size() - 1);
    }
    throw;
  }
  return {};
}

std::vector<std::string> TutorService::sms_inbound(const std::string& from, const std::string& text) {
  const std::string learner_id = sms_learner_id(from);
  {
    std::lock_guard lock(create_mutex_);
    if (!log_.has_learner(learner_id)) {
      log_.create_learner(learner_id);
      std::ofstream meta(log_.directory() / "learners" / (learner_id + ".meta.json"));
      meta << Json{{"name", from}}.dump() << "\n";
    }
  }
  auto s = slot(learner_id);
  std::lock_guard lock(s->mutex);
  load(learner_id, *s);

  std::vector<std::string> messages;
  const std::string reply = sms_reply(learner_id, *s, channel::parse_command(text), messages);
  if (!reply.empty()) messages.push_back(reply);

  std::vector<std::string> payloads;
  for (const auto& msg : messages) {
    for (auto& seg : channel::segment_text(msg)) payloads.push_back(std::move(seg.payload));
  }
  return payloads;
}

}  // namespace tutor::gateway

#pragma once

// Transport-independent tutoring service. Owns the course, the profiler and
// the event store; every state change is appended to the learner's log before
// it becomes visible.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tutor/channel.hpp"
#include "tutor/kb.hpp"
#include "tutor/learner.hpp"
#include "tutor/session.hpp"
#include "tutor/store.hpp"

namespace tutor::gateway {

/// Result of a session call: the prompts to show, in order, and where the
/// session ended up.
struct Step {
  std::string session_id;
  SessionState state = SessionState::Created;
  std::vector<Prompt> prompts;
};

struct Progress {
  std::string learner_id;
  std::string name;
  std::optional<LearnerLevel> learner_level;
  StyleProfile style_profile;
  std::map<std::string, ConceptRecord> concept_records;
  std::optional<std::string> active_session;
  std::vector<std::string> next_concepts;
};

class TutorService {
 public:
  TutorService(CourseGraph course, Questionnaire profiler, TutorConfig cfg,
               std::filesystem::path data_dir, StoreOptions store_options = {});

  /// Allocates the next "L0001"-style id.
  std::string create_learner(const std::string& name);
  StyleProfile submit_profile(const std::string& learner_id, const std::vector<ProfilerAnswer>& answers);
  Progress progress(const std::string& learner_id);

  /// Empty concept_id starts the first eligible concept.
  Step start_session(const std::string& learner_id, const std::string& concept_id);
  Step submit(const std::string& session_id, const Input& input);
  /// The session's current prompt. Throws UnknownSession.
  Step view(const std::string& session_id);

  /// One inbound text from `from`; returns the outbound segment payloads.
  std::vector<std::string> sms_inbound(const std::string& from, const std::string& text);

  std::vector<Event> events(const std::string& learner_id) const { return log_.read(learner_id); }
  std::vector<std::string> list_learners() const { return log_.list_learners(); }

  const CourseGraph& course() const noexcept { return course_; }
  const Questionnaire& questionnaire() const noexcept { return profiler_; }
  const TutorConfig& config() const noexcept { return cfg_; }

  /// Deterministic per-session seed.
  static std::uint64_t session_seed(const std::string& session_id);
  /// "<learner>.s<n>".
  static std::string session_id_for(const std::string& learner_id, int n);
  /// "sms-" followed by the sender's digits. Throws InvalidArgument when the
  /// sender has none.
  static std::string sms_learner_id(const std::string& from);

 private:
  struct Slot {
    std::mutex mutex;
    bool loaded = false;
    LearnerState state;
    int sessions_started = 0;
    /// Session kept after it closes so it can still be viewed.
    std::map<std::string, Session> closed;
  };

  std::shared_ptr<Slot> slot(const std::string& learner_id);
  void load(const std::string& learner_id, Slot& s);
  /// Appends new transcript entries and commits the state copy.
  void persist(const std::string& learner_id, Slot& slot, LearnerState next,
               const std::vector<TranscriptEntry>& entries);
  Step start_locked(const std::string& learner_id, Slot& s, const std::string& concept_id);
  Step submit_locked(const std::string& learner_id, Slot& s, const std::string& session_id,
                     const Input& input);
  std::string sms_reply(const std::string& learner_id, Slot& s, const channel::Command& cmd,
                        std::vector<std::string>& messages);
  std::string find_concept(const std::string& ref) const;

  CourseGraph course_;
  Questionnaire profiler_;
  TutorConfig cfg_;
  EventLog log_;
  SessionEngine engine_;

  std::mutex slots_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
  std::mutex create_mutex_;
};

/// Learner id encoded in a session id. Throws UnknownSession.
std::string learner_of_session(const std::string& session_id);

}  // namespace tutor::gateway

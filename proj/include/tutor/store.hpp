#pragma once

// Event-sourced persistence. One newline-delimited JSON log per learner is
// the source of truth; snapshots only shorten replay.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tutor/event.hpp"
#include "tutor/kb.hpp"
#include "tutor/learner.hpp"
#include "tutor/session.hpp"

namespace tutor {

/// One log line without the trailing newline:
/// {"seq":..,"lid":..,"ts":..,"kind":..,"payload":{..},"crc32":"xxxxxxxx"}
/// The crc covers the same line with the crc32 member removed.
std::string encode_event_line(const Event& e);

/// Throws CorruptLog (sequence = `expected_seq`) on a bad line.
Event decode_event_line(std::string_view line, std::uint64_t expected_seq);

/// Learner ids double as file names: [A-Za-z0-9_-], 1..64 characters.
bool is_valid_learner_id(std::string_view id);

struct StoreOptions {
  bool fsync = true;
  /// Milliseconds since epoch; defaults to the system clock.
  std::function<std::int64_t()> clock;
};

struct Snapshot {
  std::string learner_id;
  std::uint64_t as_of_sequence = 0;
  LearnerModel model;
  /// The session open at as_of_sequence, if any.
  std::optional<Session> session;

  bool operator==(const Snapshot&) const = default;
};

/// Append-only event files under `<dir>/learners/`. Single writer per
/// learner; concurrent readers are fine.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path dir, StoreOptions options = {});

  /// Creates an empty log. Throws InvalidArgument for a bad id or one that
  /// already exists.
  void create_learner(const std::string& learner_id);
  bool has_learner(const std::string& learner_id) const;
  /// Lexicographic.
  std::vector<std::string> list_learners() const;

  /// Appends and syncs. e.sequence == 0 asks the store to assign the next
  /// number; otherwise it must be last + 1. Returns the sequence written.
  /// Throws UnknownLearner, SequenceConflict, IoFailure.
  std::uint64_t append(Event e);

  /// Throws UnknownLearner, CorruptLog.
  std::vector<Event> read(const std::string& learner_id) const;

  void write_snapshot(const Snapshot& s);
  std::optional<Snapshot> read_snapshot(const std::string& learner_id) const;

  const std::filesystem::path& directory() const noexcept { return dir_; }

 private:
  std::filesystem::path log_path(const std::string& id) const;
  std::filesystem::path snapshot_path(const std::string& id) const;
  std::uint64_t last_sequence_locked(const std::string& id);

  std::filesystem::path dir_;
  StoreOptions options_;
  std::mutex mutex_;
  std::map<std::string, std::uint64_t> last_seq_;
};

/// Folded learner state: the model plus the open session, if any.
struct LearnerState {
  LearnerModel model;
  std::optional<Session> session;
  std::uint64_t as_of_sequence = 0;

  bool operator==(const LearnerState&) const = default;
};

/// Folds `events` (sequence > start.as_of_sequence) onto `start` by re-driving
/// the session engine. Derived events are cross-checked against the
/// regenerated transcript. Throws CorruptLog on divergence.
LearnerState replay(const SessionEngine& engine, LearnerState start, const std::vector<Event>& events);

/// Event log plus the course needed to interpret it.
class LearnerRepository {
 public:
  LearnerRepository(EventLog& log, const CourseGraph& course, const TutorConfig& cfg)
      : log_(log), engine_(course, cfg) {}

  /// From the latest snapshot when present. Throws UnknownLearner, CorruptLog.
  LearnerState load_state(const std::string& learner_id) const;
  LearnerModel load_learner(const std::string& learner_id) const {
    return load_state(learner_id).model;
  }
  LearnerState replay_from_genesis(const std::string& learner_id) const;

  /// Folds the current log and persists it as the learner's snapshot.
  Snapshot snapshot(const std::string& learner_id);
  std::vector<std::string> list_learners() const { return log_.list_learners(); }

  const SessionEngine& engine() const noexcept { return engine_; }
  EventLog& log() noexcept { return log_; }

 private:
  EventLog& log_;
  SessionEngine engine_;
};

}  // namespace tutor

#include "tutor/store.hpp"

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <deque>
#include <fstream>
#include <sstream>

#include "tutor/error.hpp"
#include "tutor/serialize.hpp"

namespace tutor {

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::ProfileSubmitted: return "ProfileSubmitted";
    case EventKind::SessionStarted: return "SessionStarted";
    case EventKind::AnswerSubmitted: return "AnswerSubmitted";
    case EventKind::PageAdvanced: return "PageAdvanced";
    case EventKind::PhaseFinalized: return "PhaseFinalized";
    case EventKind::SessionClosed: return "SessionClosed";
  }
  return "SessionStarted";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (auto k : {EventKind::ProfileSubmitted, EventKind::SessionStarted, EventKind::AnswerSubmitted,
                 EventKind::PageAdvanced, EventKind::PhaseFinalized, EventKind::SessionClosed}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

namespace {

constexpr std::string_view kCrcPrefix = ",\"crc32\":\"";
constexpr std::size_t kCrcSuffixLength = kCrcPrefix.size() + 8 + 2;  // hex digits + "}

std::string crc_hex(std::string_view bytes) {
  const uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
                          static_cast<uInt>(bytes.size()));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc & 0xffffffffUL));
  return buf;
}

[[noreturn]] void io_failure(const std::string& what, const std::filesystem::path& p) {
  throw Error(Errc::IoFailure, what + " " + p.string() + ": " + std::strerror(errno));
}

void write_all(int fd, std::string_view data, const std::filesystem::path& p) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_failure("write", p);
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

std::int64_t system_clock_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::string encode_event_line(const Event& e) {
  const Json body{{"seq", e.sequence},
                  {"lid", e.learner_id},
                  {"ts", e.timestamp},
                  {"kind", to_string(e.kind)},
                  {"payload", e.payload}};
  std::string line = body.dump();
  const std::string crc = crc_hex(line);
  line.pop_back();  // closing brace
  line.append(kCrcPrefix).append(crc).append("\"}");
  return line;
}

Event decode_event_line(std::string_view line, std::uint64_t expected_seq) {
  if (line.size() < kCrcSuffixLength + 2 ||
      line.substr(line.size() - kCrcSuffixLength, kCrcPrefix.size()) != kCrcPrefix ||
      line.substr(line.size() - 2) != "\"}") {
    throw CorruptLog(expected_seq, "missing crc32 field");
  }
  const std::string_view crc = line.substr(line.size() - 10, 8);
  std::string body(line.substr(0, line.size() - kCrcSuffixLength));
  body.push_back('}');
  if (crc_hex(body) != crc) throw CorruptLog(expected_seq, "crc32 mismatch");

  try {
    const Json j = Json::parse(body);
    Event e;
    e.sequence = j.at("seq").get<std::uint64_t>();
    e.learner_id = j.at("lid").get<std::string>();
    e.timestamp = j.at("ts").get<std::int64_t>();
    auto kind = parse_event_kind(j.at("kind").get<std::string>());
    if (!kind) throw CorruptLog(expected_seq, "unknown event kind");
    e.kind = *kind;
    e.payload = j.at("payload");
    if (!e.payload.is_object()) throw CorruptLog(expected_seq, "payload is not an object");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw CorruptLog(expected_seq, ex.what());
  }
}

bool is_valid_learner_id(std::string_view id) {
  return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '-' || c == '_';
  });
}

// ---------------------------------------------------------------------------

EventLog::EventLog(std::filesystem::path dir, StoreOptions options)
    : dir_(std::move(dir)), options_(std::move(options)) {
  if (!options_.clock) options_.clock = system_clock_ms;
  std::error_code ec;
  std::filesystem::create_directories(dir_ / "learners", ec);
  if (ec) throw Error(Errc::IoFailure, "cannot create " + (dir_ / "learners").string());
}

std::filesystem::path EventLog::log_path(const std::string& id) const {
  return dir_ / "learners" / (id + ".log");
}

std::filesystem::path EventLog::snapshot_path(const std::string& id) const {
  return dir_ / "learners" / (id + ".snapshot.json");
}

void EventLog::create_learner(const std::string& learner_id) {
  if (!is_valid_learner_id(learner_id))
    throw Error(Errc::InvalidArgument, "invalid learner id '" + learner_id + "'");
  std::lock_guard lock(mutex_);
  const auto path = log_path(learner_id);
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
  if (fd < 0) {
    if (errno == EEXIST) throw Error(Errc::InvalidArgument, "learner " + learner_id + " exists");
    io_failure("create", path);
  }
  ::close(fd);
  last_seq_[learner_id] = 0;
}

bool EventLog::has_learner(const std::string& learner_id) const {
  return is_valid_learner_id(learner_id) && std::filesystem::exists(log_path(learner_id));
}

std::vector<std::string> EventLog::list_learners() const {
  std::vector<std::string> ids;
  for (const auto& entry : std::filesystem::directory_iterator(dir_ / "learners")) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && entry.path().extension() == ".log")
      ids.push_back(name.substr(0, name.size() - 4));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::uint64_t EventLog::last_sequence_locked(const std::string& id) {
  auto it = last_seq_.find(id);
  if (it != last_seq_.end()) return it->second;
  const auto events = read(id);
  const std::uint64_t last = events.empty() ? 0 : events.back().sequence;
  last_seq_[id] = last;
  return last;
}

std::uint64_t EventLog::append(Event e) {
  std::lock_guard lock(mutex_);
  if (!has_learner(e.learner_id)) throw Error(Errc::UnknownLearner, "unknown learner " + e.learner_id);
  const std::uint64_t last = last_sequence_locked(e.learner_id);
  if (e.sequence == 0) e.sequence = last + 1;
  if (e.sequence != last + 1) {
    throw Error(Errc::SequenceConflict, "sequence " + std::to_string(e.sequence) + " after " +
                                            std::to_string(last));
  }
  if (e.timestamp == 0) e.timestamp = options_.clock();

  const auto path = log_path(e.learner_id);
  const std::string line = encode_event_line(e) + "\n";
  const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND);
  if (fd < 0) io_failure("open", path);
  try {
    write_all(fd, line, path);
    if (options_.fsync && ::fsync(fd) != 0) io_failure("fsync", path);
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
  last_seq_[e.learner_id] = e.sequence;
  return e.sequence;
}

std::vector<Event> EventLog::read(const std::string& learner_id) const {
  if (!has_learner(learner_id)) throw Error(Errc::UnknownLearner, "unknown learner " + learner_id);
  std::ifstream in(log_path(learner_id), std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot read log of " + learner_id);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();

  std::vector<Event> events;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const std::uint64_t expected = events.size() + 1;
    const std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) throw CorruptLog(expected, "truncated record");
    Event e = decode_event_line(std::string_view(content).substr(pos, nl - pos), expected);
    if (e.sequence != expected) throw CorruptLog(expected, "sequence out of order");
    if (e.learner_id != learner_id) throw CorruptLog(expected, "record for another learner");
    events.push_back(std::move(e));
    pos = nl + 1;
  }
  return events;
}

void EventLog::write_snapshot(const Snapshot& s) {
  const Json doc{{"learner_id", s.learner_id},
                 {"as_of_seq", s.as_of_sequence},
                 {"model", to_json(s.model)},
                 {"session", s.session ? to_json(*s.session) : Json(nullptr)}};
  const auto path = snapshot_path(s.learner_id);
  auto tmp = path;
  tmp += ".tmp";
  const std::string data = doc.dump() + "\n";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) io_failure("open", tmp);
  try {
    write_all(fd, data, tmp);
    if (options_.fsync && ::fsync(fd) != 0) io_failure("fsync", tmp);
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::IoFailure, "cannot publish snapshot " + path.string());
}

std::optional<Snapshot> EventLog::read_snapshot(const std::string& learner_id) const {
  const auto path = snapshot_path(learner_id);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    const Json doc = Json::parse(in);
    Snapshot s;
    s.learner_id = doc.at("learner_id").get<std::string>();
    s.as_of_sequence = doc.at("as_of_seq").get<std::uint64_t>();
    s.model = learner_model_from_json(doc.at("model"));
    if (!doc.at("session").is_null()) s.session = session_from_json(doc.at("session"));
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::IoFailure, "unreadable snapshot " + path.string() + ": " + ex.what());
  }
}

// ---------------------------------------------------------------------------
// Replay

LearnerState replay(const SessionEngine& engine, LearnerState st, const std::vector<Event>& events) {
  std::deque<TranscriptEntry> pending;
  for (const Event& e : events) {
    if (e.sequence <= st.as_of_sequence) continue;
    const TranscriptEntry logged{e.kind, e.payload};
    try {
      if (!is_driver(e.kind)) {
        if (pending.empty() || pending.front() != logged)
          throw CorruptLog(e.sequence, "derived event does not match replay");
        pending.pop_front();
        st.as_of_sequence = e.sequence;
        continue;
      }
      // A crash can drop the derived tail of a step; the next input supersedes it.
      pending.clear();
      if (e.kind == EventKind::ProfileSubmitted) {
        st.model.style_profile = style_profile_from_json(e.payload.at("profile"));
        st.as_of_sequence = e.sequence;
        continue;
      }

      std::vector<TranscriptEntry> generated;
      if (e.kind == EventKind::SessionStarted) {
        auto started = engine.start(st.model, e.payload.at("concept_id").get<std::string>(),
                                    e.payload.at("session_id").get<std::string>(),
                                    e.payload.at("seed").get<std::uint64_t>());
        st.session = std::move(started.session);
        generated = st.session->transcript;
      } else {
        if (!st.session || st.session->session_id != e.payload.at("session_id").get<std::string>())
          throw CorruptLog(e.sequence, "input for a session that is not open");
        const std::size_t before = st.session->transcript.size();
        const Input input = e.kind == EventKind::PageAdvanced
                                ? Input::next()
                                : Input::answer(e.payload.at("choice").get<int>());
        engine.submit(*st.session, st.model, input);
        generated.assign(st.session->transcript.begin() + static_cast<std::ptrdiff_t>(before),
                         st.session->transcript.end());
      }
      if (generated.empty() || generated.front() != logged)
        throw CorruptLog(e.sequence, "input does not reproduce the logged event");
      pending.assign(generated.begin() + 1, generated.end());
      if (is_terminal(st.session->state)) st.session.reset();
      st.as_of_sequence = e.sequence;
    } catch (const CorruptLog&) {
      throw;
    } catch (const std::exception& ex) {
      throw CorruptLog(e.sequence, ex.what());
    }
  }
  return st;
}

LearnerState LearnerRepository::replay_from_genesis(const std::string& learner_id) const {
  const auto events = log_.read(learner_id);
  LearnerState start;
  start.model.learner_id = learner_id;
  return replay(engine_, std::move(start), events);
}

LearnerState LearnerRepository::load_state(const std::string& learner_id) const {
  const auto events = log_.read(learner_id);
  LearnerState start;
  start.model.learner_id = learner_id;
  if (auto snap = log_.read_snapshot(learner_id)) {
    const std::uint64_t last = events.empty() ? 0 : events.back().sequence;
    if (snap->as_of_sequence > last)
      throw CorruptLog(snap->as_of_sequence, "snapshot is ahead of the log");
    start.model = std::move(snap->model);
    start.session = std::move(snap->session);
    start.as_of_sequence = snap->as_of_sequence;
  }
  return replay(engine_, std::move(start), events);
}

Snapshot LearnerRepository::snapshot(const std::string& learner_id) {
  LearnerState st = load_state(learner_id);
  Snapshot snap{learner_id, st.as_of_sequence, std::move(st.model), std::move(st.session)};
  log_.write_snapshot(snap);
  return snap;
}

}  // namespace tutor

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace tutor {

using Json = nlohmann::ordered_json;

enum class EventKind {
  ProfileSubmitted,
  SessionStarted,
  AnswerSubmitted,
  PageAdvanced,
  PhaseFinalized,
  SessionClosed,
};

std::string_view to_string(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

/// Inputs drive replay; the rest are derived and only cross-checked.
constexpr bool is_driver(EventKind k) {
  return k == EventKind::ProfileSubmitted || k == EventKind::SessionStarted ||
         k == EventKind::AnswerSubmitted || k == EventKind::PageAdvanced;
}

/// A session-local record; becomes an Event once the store assigns sequence
/// and timestamp.
struct TranscriptEntry {
  EventKind kind = EventKind::SessionStarted;
  Json payload = Json::object();
  bool operator==(const TranscriptEntry&) const = default;
};

struct Event {
  std::uint64_t sequence = 0;
  std::string learner_id;
  std::int64_t timestamp = 0;  // ms since epoch
  EventKind kind = EventKind::SessionStarted;
  Json payload = Json::object();

  bool operator==(const Event&) const = default;
};

}  // namespace tutor

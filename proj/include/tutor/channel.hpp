#pragma once

// SMS-like text channel: 160-character segmentation, command grammar and
// prompt rendering.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tutor/session.hpp"

namespace tutor::channel {

inline constexpr std::size_t kSegmentLimit = 160;
inline constexpr int kMaxSegments = 99;

struct Segment {
  int index = 1;  // 1-based
  int total = 1;
  std::string payload;  // header included when total > 1
  bool operator==(const Segment&) const = default;
};

/// Splits text into segments of at most `limit` characters. Multi-part
/// messages carry an "i/n " header counted inside the limit.
/// Throws EmptyPayload, NonPrintable, TooLong.
std::vector<Segment> segment_text(std::string_view text, std::size_t limit = kSegmentLimit);

/// Inverse of segment_text. Accepts segments in any order.
/// Throws MissingSegment, DuplicateSegment, InconsistentTotal.
std::string reassemble(std::vector<Segment> segments);

/// Recovers index/total from a received payload. A payload without a
/// well-formed "i/n " header (n >= 2) is a single-part message.
Segment from_wire(std::string_view payload);

struct AnswerCmd {
  char letter = 'A';  // 'A'..'D'
  int index() const { return letter - 'A'; }
  bool operator==(const AnswerCmd&) const = default;
};
struct NextCmd {
  bool operator==(const NextCmd&) const = default;
};
struct StatusCmd {
  bool operator==(const StatusCmd&) const = default;
};
struct HelpCmd {
  bool operator==(const HelpCmd&) const = default;
};
struct StartCmd {
  std::string concept_ref;  // empty: next eligible concept
  bool operator==(const StartCmd&) const = default;
};
struct UnknownCmd {
  std::string raw;  // normalized (trimmed, upper-cased) input
  bool operator==(const UnknownCmd&) const = default;
};

using Command = std::variant<AnswerCmd, NextCmd, StatusCmd, HelpCmd, StartCmd, UnknownCmd>;

/// Total: anything unrecognized becomes UnknownCmd.
Command parse_command(std::string_view text);

std::string render_prompt(const Prompt& p);

/// Trim ASCII whitespace and upper-case.
std::string normalize(std::string_view text);

}  // namespace tutor::channel

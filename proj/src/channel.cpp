#include "tutor/channel.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "tutor/error.hpp"
#include "tutor/kb.hpp"

namespace tutor::channel {

namespace {

std::string header(int index, int total) {
  return std::to_string(index) + "/" + std::to_string(total) + " ";
}

/// Characters available for text when a message is split into `total` parts.
std::size_t capacity(int total, std::size_t limit) {
  std::size_t sum = 0;
  for (int i = 1; i <= total; ++i) {
    const std::size_t h = header(i, total).size();
    if (h >= limit) return 0;
    sum += limit - h;
  }
  return sum;
}

}  // namespace

std::vector<Segment> segment_text(std::string_view text, std::size_t limit) {
  if (text.empty()) throw Error(Errc::EmptyPayload, "nothing to send");
  if (!is_printable7(text)) throw Error(Errc::NonPrintable, "text outside printable 7-bit");
  if (text.size() <= limit) return {Segment{1, 1, std::string(text)}};

  for (int total = 2; total <= kMaxSegments; ++total) {
    if (capacity(total, limit) < text.size()) continue;
    std::vector<Segment> out;
    std::size_t pos = 0;
    for (int i = 1; i <= total; ++i) {
      std::string h = header(i, total);
      const std::size_t take = std::min(limit - h.size(), text.size() - pos);
      out.push_back({i, total, h.append(text.substr(pos, take))});
      pos += take;
    }
    return out;
  }
  throw Error(Errc::TooLong, std::to_string(text.size()) + " characters need more than " +
                                 std::to_string(kMaxSegments) + " segments");
}

std::string reassemble(std::vector<Segment> segments) {
  if (segments.empty()) throw MissingSegment(1);
  const int total = segments.front().total;
  for (const auto& s : segments) {
    if (s.total != total || s.index < 1 || s.index > s.total)
      throw Error(Errc::InconsistentTotal, "segment totals disagree");
  }
  std::map<int, const Segment*> by_index;
  for (const auto& s : segments) {
    if (!by_index.emplace(s.index, &s).second)
      throw Error(Errc::DuplicateSegment, "segment " + std::to_string(s.index) + " repeated");
  }
  for (int i = 1; i <= total; ++i) {
    if (!by_index.count(i)) throw MissingSegment(i);
  }
  if (total == 1) return segments.front().payload;

  std::string text;
  for (const auto& [index, seg] : by_index) {
    const std::string h = header(index, total);
    if (seg->payload.compare(0, h.size(), h) != 0)
      throw Error(Errc::InconsistentTotal, "segment " + std::to_string(index) + " header mismatch");
    text.append(seg->payload, h.size());
  }
  return text;
}

Segment from_wire(std::string_view payload) {
  const auto slash = payload.find('/');
  const auto space = payload.find(' ');
  const auto digits = [](std::string_view d) {
    return !d.empty() && d.size() <= 2 &&
           std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (slash != std::string_view::npos && space != std::string_view::npos && slash < space) {
    const auto i = payload.substr(0, slash);
    const auto n = payload.substr(slash + 1, space - slash - 1);
    if (digits(i) && digits(n)) {
      const int index = std::stoi(std::string(i));
      const int total = std::stoi(std::string(n));
      if (total >= 2 && index >= 1 && index <= total && header(index, total).size() == space + 1)
        return {index, total, std::string(payload)};
    }
  }
  return {1, 1, std::string(payload)};
}

std::string normalize(std::string_view text) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  auto first = std::find_if_not(text.begin(), text.end(), is_space);
  auto last = std::find_if_not(text.rbegin(), text.rend(), is_space).base();
  std::string out = first < last ? std::string(first, last) : std::string();
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

Command parse_command(std::string_view text) {
  const std::string norm = normalize(text);
  if (norm.size() == 1 && norm[0] >= 'A' && norm[0] <= 'D') return AnswerCmd{norm[0]};
  if (norm == "NEXT") return NextCmd{};
  if (norm == "STATUS") return StatusCmd{};
  if (norm == "HELP") return HelpCmd{};
  if (norm == "START") return StartCmd{};
  if (norm.rfind("START", 0) == 0 && std::isspace(static_cast<unsigned char>(norm[5])))
    return StartCmd{normalize(std::string_view(norm).substr(6))};
  return UnknownCmd{norm};
}

namespace {

struct Renderer {
  std::string operator()(const QuestionPrompt& q) const {
    std::string out = q.text;
    for (std::size_t i = 0; i < q.choices.size(); ++i) {
      out += "\n";
      out += static_cast<char>('A' + i);
      out += ") " + q.choices[i];
    }
    return out + "\nReply A-D";
  }
  std::string operator()(const ContentPage& p) const {
    const std::string body = p.media ? "[media: " + p.body + "]" : p.body;
    return body + "\n(p " + std::to_string(p.page) + "/" + std::to_string(p.total) +
           ") Reply NEXT";
  }
  std::string operator()(const PhaseResult& r) const {
    return std::string(r.phase == Phase::PreTest ? "Pre-test: " : "Post-test: ") +
           std::to_string(r.score) + "/100 (" + std::string(display_label(r.level)) + ")";
  }
  std::string operator()(const SessionResult& r) const {
    std::string status;
    switch (r.status) {
      case SessionState::Completed: status = "Completed"; break;
      case SessionState::Skipped: status = "Skipped, already mastered"; break;
      case SessionState::Deferred: status = "Deferred, will return later"; break;
      default: status = "In progress"; break;
    }
    return "Result: " + status + " (" + std::string(display_label(r.level)) + ")";
  }
};

}  // namespace

std::string render_prompt(const Prompt& p) { return std::visit(Renderer{}, p); }

}  // namespace tutor::channel

#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "tutor/kb.hpp"
#include "tutor/rng.hpp"

namespace support {

inline std::filesystem::path source_dir() { return TUTOR_SOURCE_DIR; }

inline std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fixture(const std::string& name) { return read(source_dir() / "tests" / "fixtures" / name); }
inline std::string demo(const std::string& name) { return read(source_dir() / "data" / name); }

/// Fresh empty directory under the system temp dir.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("tutor-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(++counter));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline tutor::Question question(const std::string& id, const std::string& cid, const std::string& sid,
                                int difficulty, int points = 1,
                                tutor::QuestionScope scope = tutor::QuestionScope::Conceptual,
                                int choices = 4, int correct = 0) {
  tutor::Question q;
  q.id = id;
  q.concept_id = cid;
  q.section_id = sid;
  q.difficulty = difficulty;
  q.points = points;
  q.scope = scope;
  q.prompt = "Question " + id;
  for (int i = 0; i < choices; ++i) q.choices.push_back("choice " + std::to_string(i));
  q.correct = correct;
  return q;
}

inline tutor::ContentVariant text_variant(const std::string& id, const std::string& cid,
                                          std::vector<std::string> pages = {"page one", "page two"}) {
  tutor::ContentVariant v;
  v.id = id;
  v.concept_id = cid;
  v.method = tutor::Method::Text;
  v.body = std::move(pages);
  return v;
}

inline tutor::ContentVariant media_variant(const std::string& id, const std::string& cid, tutor::Method m) {
  tutor::ContentVariant v;
  v.id = id;
  v.concept_id = cid;
  v.method = m;
  v.body = {"media/" + id};
  return v;
}

/// A single-concept course with the given section weights and `per_cell`
/// questions in every (section, difficulty) cell. Points cycle 1..5.
inline tutor::CourseGraph uniform_course(const std::vector<int>& weights, int per_cell,
                                         bool all_methods = false) {
  tutor::CourseGraph g;
  tutor::Concept c;
  c.id = "c1";
  c.title = "Concept";
  for (std::size_t i = 0; i < weights.size(); ++i)
    c.sections.push_back({"s" + std::to_string(i + 1), "Section", weights[i]});
  g.concepts.push_back(c);
  g.variants.push_back(text_variant("c1-text", "c1"));
  if (all_methods) {
    g.variants.push_back(media_variant("c1-film", "c1", tutor::Method::Film));
    g.variants.push_back(media_variant("c1-dv", "c1", tutor::Method::DynamicView));
    g.variants.push_back(media_variant("c1-game", "c1", tutor::Method::Game));
  }
  std::vector<tutor::Question> qs;
  int n = 0;
  for (const auto& s : c.sections) {
    for (int d = 1; d <= 5; ++d) {
      for (int k = 0; k < per_cell; ++k) {
        ++n;
        qs.push_back(question(s.id + "-d" + std::to_string(d) + "-" + std::to_string(k), "c1", s.id, d,
                              1 + n % 5,
                              n % 2 ? tutor::QuestionScope::Conceptual : tutor::QuestionScope::Objective));
      }
    }
  }
  g.questions = tutor::QuestionBank(std::move(qs));
  return g;
}

}  // namespace support

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tutor/enums.hpp"

namespace tutor {

struct Question {
  std::string id;
  std::string concept_id;
  std::string section_id;
  int difficulty = 1;  // 1..5
  int points = 1;      // 1..10
  QuestionScope scope = QuestionScope::Conceptual;
  std::string prompt;
  std::vector<std::string> choices;  // 2..4
  int correct = 0;

  bool operator==(const Question&) const = default;
};

/// Immutable question store with the lookups the planner needs.
class QuestionBank {
 public:
  QuestionBank() = default;
  explicit QuestionBank(std::vector<Question> questions);
  // The indexes hold pointers into questions_, so copies re-index.
  QuestionBank(const QuestionBank& other);
  QuestionBank& operator=(const QuestionBank& other);
  QuestionBank(QuestionBank&&) noexcept = default;
  QuestionBank& operator=(QuestionBank&&) noexcept = default;

  const std::vector<Question>& all() const noexcept { return questions_; }
  std::size_t size() const noexcept { return questions_.size(); }

  /// nullptr when unknown.
  const Question* find(const std::string& id) const;
  const Question& at(const std::string& id) const;

  /// Questions for one section of one concept at one difficulty, in file order.
  const std::vector<const Question*>& cell(const std::string& concept_id,
                                           const std::string& section_id, int difficulty) const;
  const std::vector<const Question*>& by_concept(const std::string& concept_id) const;

 private:
  void index();

  std::vector<Question> questions_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::pair<std::string, std::string>, std::map<int, std::vector<const Question*>>>
      by_cell_;
  std::map<std::string, std::vector<const Question*>> by_concept_;
};

}  // namespace tutor

#include "tutor/question.hpp"

#include "tutor/error.hpp"

namespace tutor {

QuestionBank::QuestionBank(std::vector<Question> questions) : questions_(std::move(questions)) {
  index();
}

QuestionBank::QuestionBank(const QuestionBank& other) : questions_(other.questions_) { index(); }

QuestionBank& QuestionBank::operator=(const QuestionBank& other) {
  if (this != &other) {
    questions_ = other.questions_;
    index();
  }
  return *this;
}

void QuestionBank::index() {
  by_id_.clear();
  by_cell_.clear();
  by_concept_.clear();
  for (std::size_t i = 0; i < questions_.size(); ++i) {
    const Question& q = questions_[i];
    by_id_.emplace(q.id, i);  // first wins; duplicates are a validation finding
    by_cell_[{q.concept_id, q.section_id}][q.difficulty].push_back(&q);
    by_concept_[q.concept_id].push_back(&q);
  }
}

const Question* QuestionBank::find(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &questions_[it->second];
}

const Question& QuestionBank::at(const std::string& id) const {
  if (const Question* q = find(id)) return *q;
  throw Error(Errc::InvalidArgument, "unknown question " + id);
}

const std::vector<const Question*>& QuestionBank::cell(const std::string& concept_id,
                                                       const std::string& section_id,
                                                       int difficulty) const {
  static const std::vector<const Question*> empty;
  auto it = by_cell_.find({concept_id, section_id});
  if (it == by_cell_.end()) return empty;
  auto jt = it->second.find(difficulty);
  return jt == it->second.end() ? empty : jt->second;
}

const std::vector<const Question*>& QuestionBank::by_concept(const std::string& concept_id) const {
  static const std::vector<const Question*> empty;
  auto it = by_concept_.find(concept_id);
  return it == by_concept_.end() ? empty : it->second;
}

}  // namespace tutor

#include "tutor/kb.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "json_reader.hpp"

namespace tutor {

bool is_printable7(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return c == '\n' || (u >= 0x20 && u <= 0x7e);
  });
}

const Section* Concept::find_section(std::string_view sid) const {
  for (const auto& s : sections)
    if (s.id == sid) return &s;
  return nullptr;
}

const Concept* CourseGraph::find_concept(std::string_view cid) const {
  for (const auto& c : concepts)
    if (c.id == cid) return &c;
  return nullptr;
}

const Concept& CourseGraph::concept_at(std::string_view cid) const {
  if (const Concept* c = find_concept(cid)) return *c;
  throw Error(Errc::UnknownConcept, "unknown concept " + std::string(cid));
}

const ContentVariant* CourseGraph::find_variant(std::string_view vid) const {
  for (const auto& v : variants)
    if (v.id == vid) return &v;
  return nullptr;
}

std::vector<const ContentVariant*> CourseGraph::variants_for(std::string_view cid) const {
  std::vector<const ContentVariant*> out;
  for (const auto& v : variants)
    if (v.concept_id == cid) out.push_back(&v);
  return out;
}

std::set<Method> CourseGraph::methods_for(std::string_view cid) const {
  std::set<Method> out;
  for (const auto* v : variants_for(cid)) out.insert(v->method);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  detail::expect_array(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(detail::expect_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Concept parse_concept(const Json& j, const std::string& path) {
  detail::ObjectReader r(j, path);
  Concept c;
  c.id = r.string("id");
  c.title = r.string("title");
  if (const Json* pre = r.optional("prerequisites"))
    c.prerequisites = string_list(*pre, r.path_of("prerequisites"));
  const Json& sections = r.array("sections");
  r.finish();
  for (std::size_t i = 0; i < sections.size(); ++i) {
    detail::ObjectReader s(sections[i], r.path_of("sections") + "[" + std::to_string(i) + "]");
    Section sec;
    sec.id = s.string("id");
    sec.title = s.string("title");
    sec.importance_weight = static_cast<int>(s.integer("importance_weight"));
    s.finish();
    c.sections.push_back(std::move(sec));
  }
  return c;
}

ContentVariant parse_variant(const Json& j, const std::string& path) {
  detail::ObjectReader r(j, path);
  ContentVariant v;
  v.id = r.string("id");
  v.concept_id = r.string("concept_id");
  if (const Json* sid = r.optional("section_id"))
    v.section_id = detail::expect_string(*sid, r.path_of("section_id"));
  const std::string method = r.string("method");
  auto m = parse_method(method);
  if (!m) throw ParseError(r.path_of("method") + ": unknown method '" + method + "'");
  v.method = *m;
  if (const Json* aff = r.optional("style_affinity")) {
    for (const auto& s : string_list(*aff, r.path_of("style_affinity"))) {
      auto style = parse_style(s);
      if (!style) throw ParseError(r.path_of("style_affinity") + ": unknown style '" + s + "'");
      v.style_affinity.insert(*style);
    }
  }
  if (const Json* band = r.optional("level_band")) {
    for (const auto& s : string_list(*band, r.path_of("level_band"))) {
      auto level = parse_learner_level(s);
      if (!level) throw ParseError(r.path_of("level_band") + ": unknown level '" + s + "'");
      v.level_band.insert(*level);
    }
  }
  const Json& body = r.required("body");
  if (body.is_string()) {
    v.body.push_back(body.get<std::string>());
  } else {
    v.body = string_list(body, r.path_of("body"));
  }
  r.finish();
  return v;
}

Question parse_question(const Json& j, const std::string& path) {
  detail::ObjectReader r(j, path);
  Question q;
  q.id = r.string("id");
  q.concept_id = r.string("concept_id");
  q.section_id = r.string("section_id");
  q.difficulty = static_cast<int>(r.integer("difficulty"));
  q.points = static_cast<int>(r.integer("points"));
  const std::string scope = r.string("scope");
  auto s = parse_scope(scope);
  if (!s) throw ParseError(r.path_of("scope") + ": unknown scope '" + scope + "'");
  q.scope = *s;
  q.prompt = r.string("prompt");
  q.choices = string_list(r.required("choices"), r.path_of("choices"));
  q.correct = static_cast<int>(r.integer("correct"));
  r.finish();
  return q;
}

}  // namespace

CourseGraph parse_course(std::string_view bytes) {
  const Json doc = detail::parse_document(bytes);
  detail::ObjectReader root(doc, "$");
  CourseGraph g;
  {
    detail::ObjectReader meta(root.object("meta"), "$.meta");
    g.version = static_cast<int>(meta.integer("version"));
    meta.optional("title");
    meta.finish();
  }
  if (g.version != 1)
    throw ParseError("$.meta.version: unsupported version " + std::to_string(g.version));

  const Json& concepts = root.array("concepts");
  const Json& variants = root.array("variants");
  const Json& questions = root.array("questions");
  root.finish();

  for (std::size_t i = 0; i < concepts.size(); ++i)
    g.concepts.push_back(parse_concept(concepts[i], "$.concepts[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < variants.size(); ++i)
    g.variants.push_back(parse_variant(variants[i], "$.variants[" + std::to_string(i) + "]"));
  std::vector<Question> qs;
  for (std::size_t i = 0; i < questions.size(); ++i)
    qs.push_back(parse_question(questions[i], "$.questions[" + std::to_string(i) + "]"));
  g.questions = QuestionBank(std::move(qs));
  return g;
}

CourseGraph load_course(std::string_view bytes, const TutorConfig& cfg) {
  CourseGraph g = parse_course(bytes);
  auto violations = validate_course(g, cfg);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return g;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class Findings {
 public:
  void add(std::string rule, std::string entity, std::string message) {
    out_.push_back({std::move(rule), std::move(entity), std::move(message)});
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

/// Strongly connected components of size >= 2 (Tarjan), members in course order.
std::vector<std::vector<std::size_t>> prerequisite_cycles(const CourseGraph& g) {
  const std::size_t n = g.concepts.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(g.concepts[i].id, i);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& p : g.concepts[i].prerequisites) {
      auto it = index.find(p);
      if (it != index.end() && it->second != i) adj[i].push_back(it->second);
    }

  std::vector<int> order(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> sccs;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (order[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      if (comp.size() > 1) {
        std::sort(comp.begin(), comp.end());
        sccs.push_back(std::move(comp));
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i)
    if (order[i] < 0) visit(i);
  std::sort(sccs.begin(), sccs.end());
  return sccs;
}

}  // namespace

std::vector<Violation> validate_course(const CourseGraph& g, const TutorConfig& cfg) {
  Findings f;

  std::set<std::string> concept_ids;
  for (const auto& c : g.concepts) {
    if (!concept_ids.insert(c.id).second) f.add("duplicate-id", c.id, "concept id repeated");
    if (c.sections.empty()) f.add("empty-sections", c.id, "concept has no sections");
    std::set<std::string> section_ids;
    for (const auto& s : c.sections) {
      if (!section_ids.insert(s.id).second)
        f.add("duplicate-id", c.id + "/" + s.id, "section id repeated within concept");
      if (s.importance_weight < 1 || s.importance_weight > 10)
        f.add("weight-range", c.id + "/" + s.id,
              "importance_weight " + std::to_string(s.importance_weight) + " outside 1..10");
    }
  }

  for (const auto& c : g.concepts) {
    for (const auto& p : c.prerequisites) {
      if (p == c.id) {
        f.add("self-prerequisite", c.id, "concept lists itself as a prerequisite");
      } else if (!concept_ids.count(p)) {
        f.add("unresolved-ref", c.id, "prerequisite " + p + " does not exist");
      }
    }
  }
  for (const auto& comp : prerequisite_cycles(g)) {
    std::string entity;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (i) entity += "<->";
      entity += g.concepts[comp[i]].id;
    }
    f.add("cycle", entity, "prerequisite cycle");
  }

  std::set<std::string> variant_ids;
  for (const auto& v : g.variants) {
    if (!variant_ids.insert(v.id).second) f.add("duplicate-id", v.id, "variant id repeated");
    const Concept* c = g.find_concept(v.concept_id);
    if (!c) {
      f.add("unresolved-ref", v.id, "variant concept " + v.concept_id + " does not exist");
    } else if (v.section_id && !c->find_section(*v.section_id)) {
      f.add("unresolved-ref", v.id, "variant section " + *v.section_id + " does not exist");
    }
    if (v.body.empty() || std::any_of(v.body.begin(), v.body.end(),
                                      [](const std::string& p) { return p.empty(); })) {
      f.add("empty-body", v.id, "variant body is empty");
    }
    for (const auto& page : v.body) {
      if (!is_printable7(page)) {
        f.add("non-printable", v.id, "body contains characters outside printable 7-bit");
        break;
      }
    }
  }

  for (const auto& c : g.concepts) {
    for (const auto& s : c.sections) {
      const bool covered = std::any_of(g.variants.begin(), g.variants.end(), [&](const auto& v) {
        return v.concept_id == c.id && v.method == Method::Text &&
               (!v.section_id || *v.section_id == s.id);
      });
      if (!covered) f.add("fallback-missing", c.id + "/" + s.id, "no Text variant covers section");
    }
  }

  std::set<std::string> question_ids;
  for (const auto& q : g.questions.all()) {
    if (!question_ids.insert(q.id).second) f.add("duplicate-id", q.id, "question id repeated");
    const Concept* c = g.find_concept(q.concept_id);
    if (!c) {
      f.add("unresolved-ref", q.id, "question concept " + q.concept_id + " does not exist");
    } else if (!c->find_section(q.section_id)) {
      f.add("unresolved-ref", q.id, "question section " + q.section_id + " does not exist");
    }
    if (q.difficulty < 1 || q.difficulty > 5)
      f.add("difficulty-range", q.id, "difficulty outside 1..5");
    if (q.points < 1 || q.points > 10) f.add("points-range", q.id, "points outside 1..10");
    if (q.choices.size() < 2 || q.choices.size() > 4)
      f.add("choices-count", q.id, "needs 2..4 choices");
    if (q.correct < 0 || q.correct >= static_cast<int>(q.choices.size()))
      f.add("correct-range", q.id, "correct index outside choices");
    bool printable = is_printable7(q.prompt);
    for (const auto& ch : q.choices) printable = printable && is_printable7(ch);
    if (!printable) f.add("non-printable", q.id, "text outside printable 7-bit");
  }

  for (const auto& c : g.concepts) {
    for (const auto& s : c.sections) {
      for (int d = 1; d <= 5; ++d) {
        const auto n = g.questions.cell(c.id, s.id, d).size();
        if (static_cast<int>(n) < cfg.min_questions_per_cell) {
          f.add("coverage-cell", s.id + "/" + std::to_string(d),
                "concept " + c.id + ": " + std::to_string(n) + " question(s), need " +
                    std::to_string(cfg.min_questions_per_cell));
        }
      }
    }
  }
  return f.take();
}

// ---------------------------------------------------------------------------
// Scheduling and variant selection

std::vector<std::string> next_concepts(const CourseGraph& g, const std::set<std::string>& completed,
                                       const std::vector<std::string>& deferred) {
  std::vector<std::string> fresh;
  std::set<std::string> eligible_deferred;
  const std::set<std::string> deferred_set(deferred.begin(), deferred.end());
  for (const auto& c : g.concepts) {
    if (completed.count(c.id)) continue;
    const bool ready = std::all_of(c.prerequisites.begin(), c.prerequisites.end(),
                                   [&](const std::string& p) { return completed.count(p) > 0; });
    if (!ready) continue;
    if (deferred_set.count(c.id)) {
      eligible_deferred.insert(c.id);
    } else {
      fresh.push_back(c.id);
    }
  }
  for (const auto& d : deferred) {
    if (eligible_deferred.erase(d)) fresh.push_back(d);
  }
  return fresh;
}

const ContentVariant& select_variant(const CourseGraph& g, const Concept& c, const LearnerModel& m,
                                     const std::set<Method>& exclude_methods,
                                     const TutorConfig& cfg) {
  const LearningStyle style = m.style_profile.dominant;
  const LearnerLevel level = m.learner_level.value_or(cfg.initial_level);
  const auto rank = [&](const ContentVariant& v, std::size_t order) {
    return std::make_tuple(cfg.preference_rank(style, v.method), v.level_band.count(level) ? 0 : 1,
                           v.style_affinity.count(style) ? 0 : 1, v.section_id ? 1 : 0, order);
  };

  const ContentVariant* best = nullptr;
  const ContentVariant* best_text = nullptr;
  std::tuple<int, int, int, int, std::size_t> best_rank{};
  std::tuple<int, int, int, int, std::size_t> best_text_rank{};
  for (std::size_t i = 0; i < g.variants.size(); ++i) {
    const ContentVariant& v = g.variants[i];
    if (v.concept_id != c.id) continue;
    const auto r = rank(v, i);
    if (v.method == Method::Text && (!best_text || r < best_text_rank)) {
      best_text = &v;
      best_text_rank = r;
    }
    if (exclude_methods.count(v.method)) continue;
    if (!best || r < best_rank) {
      best = &v;
      best_rank = r;
    }
  }
  if (best) return *best;
  if (best_text) return *best_text;
  throw Error(Errc::InvalidArgument, "concept " + c.id + " has no Text variant");
}

}  // namespace tutor

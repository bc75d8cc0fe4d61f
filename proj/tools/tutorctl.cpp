// Command-line entry point: serve, validate, simulate, report.

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "tutor/error.hpp"
#include "tutor/gateway/config.hpp"
#include "tutor/gateway/http.hpp"
#include "tutor/gateway/service.hpp"
#include "tutor/gateway/simulate.hpp"
#include "tutor/kb.hpp"
#include "tutor/store.hpp"

using namespace tutor;
using namespace tutor::gateway;

namespace {

struct Overrides {
  std::string config;
  std::string course;
  std::string profiler;
  std::string data_dir;
  std::string listen;
  std::optional<int> max_repeats;
  std::optional<int> min_questions;
  std::optional<int> pretest_count;
  std::optional<int> posttest_count;
  bool no_fsync = false;
};

void add_common(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config, "JSON config file (default: $TUTOR_CONFIG)");
  app.add_option("--course", o.course, "Course file");
  app.add_option("--profiler", o.profiler, "Profiler questionnaire file");
  app.add_option("--data-dir", o.data_dir, "Event store directory");
  app.add_option("--max-repeats", o.max_repeats, "Learning repeats before deferral");
  app.add_option("--min-questions", o.min_questions, "Minimum questions per section/difficulty cell");
  app.add_option("--pretest-count", o.pretest_count, "Pre-test length");
  app.add_option("--posttest-count", o.posttest_count, "Post-test length");
}

GatewayConfig resolve_config(const Overrides& o) {
  GatewayConfig cfg = o.config.empty() ? gateway_config_from_env() : load_gateway_config(o.config);
  if (!o.course.empty()) cfg.course_path = o.course;
  if (!o.profiler.empty()) cfg.profiler_path = o.profiler;
  if (!o.data_dir.empty()) cfg.data_dir = o.data_dir;
  if (!o.listen.empty()) parse_listen(o.listen, cfg);
  if (o.max_repeats) cfg.tutor.max_repeats = *o.max_repeats;
  if (o.min_questions) cfg.tutor.min_questions_per_cell = *o.min_questions;
  if (o.pretest_count) cfg.tutor.pretest_count = *o.pretest_count;
  if (o.posttest_count) cfg.tutor.posttest_count = *o.posttest_count;
  if (o.no_fsync) cfg.fsync = false;
  return cfg;
}

CourseGraph load_course_file(const GatewayConfig& cfg) {
  return load_course(read_file(cfg.course_path), cfg.tutor);
}

void print_error(const Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    for (const auto& x : v->violations())
      std::cerr << "  " << x.rule << " " << x.entity << ": " << x.message << "\n";
  }
}

HttpGateway* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const Overrides& o) {
  const GatewayConfig cfg = resolve_config(o);
  TutorService service(load_course_file(cfg), load_questionnaire(read_file(cfg.profiler_path)),
                       cfg.tutor, cfg.data_dir, StoreOptions{cfg.fsync, {}});
  HttpGateway server(service);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on " << cfg.host << ":" << cfg.port << "\n";
  if (!server.listen(cfg.host, cfg.port)) {
    std::cerr << "error: cannot listen on " << cfg.host << ":" << cfg.port << "\n";
    return 1;
  }
  return 0;
}

int cmd_validate(const Overrides& o, const std::string& path) {
  const GatewayConfig cfg = resolve_config(o);
  CourseGraph g;
  try {
    g = parse_course(read_file(path));
  } catch (const ParseError& e) {
    std::cout << path << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    std::cout << "1 violations\n";
    return 1;
  }
  const auto violations = validate_course(g, cfg.tutor);
  for (const auto& v : violations) std::cout << v.rule << " " << v.entity << ": " << v.message << "\n";
  std::cout << violations.size() << " violations\n";
  return violations.empty() ? 0 : 1;
}

struct SimulateArgs {
  int learners = 200;
  double ability_mean = 0.0;
  double ability_sd = 1.0;
  double match_bonus = 1.0;
  std::uint64_t seed = 1;
  std::string style_match;
  std::string csv;
  std::string json;
};

int cmd_simulate(const Overrides& o, const SimulateArgs& a) {
  const GatewayConfig cfg = resolve_config(o);
  const CourseGraph course = load_course_file(cfg);
  std::vector<bool> arms;
  if (a.style_match.empty()) arms = {true, false};
  else arms = {a.style_match == "on"};

  std::vector<CohortReport> reports;
  for (bool match : arms) {
    CohortSpec spec;
    spec.name = match ? "style-matched" : "fixed-method";
    spec.learners = a.learners;
    spec.ability_mean = a.ability_mean;
    spec.ability_sd = a.ability_sd;
    spec.match_bonus = a.match_bonus;
    spec.style_match = match;
    spec.seed = a.seed;
    reports.push_back(run_cohort(course, cfg.tutor, spec));
  }
  std::cout << format_table(reports);
  if (a.csv == "-") {
    std::cout << format_csv(reports);
  } else if (!a.csv.empty()) {
    std::ofstream(a.csv) << format_csv(reports);
  }
  if (!a.json.empty()) {
    Json all = Json::array();
    for (const auto& r : reports) all.push_back(to_json(r));
    std::ofstream(a.json) << all.dump(2) << "\n";
  }
  return 0;
}

std::string describe(const Event& e) {
  const Json& p = e.payload;
  switch (e.kind) {
    case EventKind::ProfileSubmitted:
      return "dominant style " + p["profile"]["dominant"].get<std::string>();
    case EventKind::SessionStarted:
      return p["session_id"].get<std::string>() + " concept " + p["concept_id"].get<std::string>();
    case EventKind::AnswerSubmitted:
      return p["question_id"].get<std::string>() + " " +
             std::string(1, static_cast<char>('A' + p["choice"].get<int>())) +
             (p["correct"].get<bool>() ? " correct" : " wrong");
    case EventKind::PageAdvanced:
      return "page " + std::to_string(p["page"].get<int>());
    case EventKind::PhaseFinalized:
      return p["phase"].get<std::string>() + " attempt " + std::to_string(p["attempt"].get<int>()) +
             " score " + std::to_string(p["score"].get<int>()) + " " + p["level"].get<std::string>() +
             " -> " + p["decision"].get<std::string>();
    case EventKind::SessionClosed:
      return p["status"].get<std::string>() + " (" + p["reason"].get<std::string>() + ")";
  }
  return {};
}

int cmd_report(const Overrides& o, const std::string& learner_id) {
  const GatewayConfig cfg = resolve_config(o);
  const CourseGraph course = load_course_file(cfg);
  EventLog log(cfg.data_dir, StoreOptions{cfg.fsync, {}});
  LearnerRepository repo(log, course, cfg.tutor);
  const auto events = log.read(learner_id);
  const LearnerState st = repo.replay_from_genesis(learner_id);

  std::cout << "learner " << learner_id << "\n";
  for (const auto& e : events) {
    char head[64];
    std::snprintf(head, sizeof head, "%6llu  %-17s ", static_cast<unsigned long long>(e.sequence),
                  std::string(to_string(e.kind)).c_str());
    std::cout << head << describe(e) << "\n";
  }
  const LearnerModel& m = st.model;
  std::cout << "learner level: " << (m.learner_level ? std::string(to_string(*m.learner_level)) : "unrated")
            << "\ndominant style: " << to_string(m.style_profile.dominant) << "\n";
  for (const auto& [id, rec] : m.concept_records) {
    char row[160];
    std::snprintf(row, sizeof row, "  %-12s %-12s score %3d  %-10s attempts %d\n", id.c_str(),
                  std::string(to_string(rec.status)).c_str(), rec.score,
                  std::string(display_label(rec.level)).c_str(), rec.attempts);
    std::cout << row;
  }
  if (st.session) std::cout << "open session: " << st.session->session_id << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive tutoring engine and gateway"};
  app.require_subcommand(1);
  Overrides o;

  auto* serve = app.add_subcommand("serve", "Run the HTTP gateway");
  add_common(*serve, o);
  serve->add_option("--listen", o.listen, "host:port");
  serve->add_flag("--no-fsync", o.no_fsync, "Do not fsync each appended event");

  std::string course_arg;
  auto* validate = app.add_subcommand("validate", "Check a course file");
  add_common(*validate, o);
  validate->add_option("file", course_arg, "Course file to check")->required();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run simulated learner cohorts");
  add_common(*simulate, o);
  simulate->add_option("--learners", sim.learners, "Learners per cohort")->check(CLI::PositiveNumber);
  simulate->add_option("--ability-mean", sim.ability_mean, "Mean ability (logit)");
  simulate->add_option("--ability-sd", sim.ability_sd, "Ability spread between learners");
  simulate->add_option("--match-bonus", sim.match_bonus, "Ability bonus for style-matched content");
  simulate->add_option("--seed", sim.seed, "Cohort seed");
  simulate->add_option("--style-match", sim.style_match, "on|off (default: run both)")
      ->check(CLI::IsMember({"on", "off"}));
  simulate->add_option("--csv", sim.csv, "Also write CSV to a file, or - for stdout");
  simulate->add_option("--json", sim.json, "Write full reports with traces as JSON");

  std::string learner_arg;
  auto* report = app.add_subcommand("report", "Print a learner's replayed history");
  add_common(*report, o);
  report->add_option("learner_id", learner_arg, "Learner id")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return cmd_serve(o);
    if (*validate) return cmd_validate(o, course_arg);
    if (*simulate) return cmd_simulate(o, sim);
    if (*report) return cmd_report(o, learner_arg);
  } catch (const Error& e) {
    print_error(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

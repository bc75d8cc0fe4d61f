#include "tutor/gateway/http.hpp"

#include <httplib.h>

#include "tutor/channel.hpp"
#include "tutor/serialize.hpp"

namespace tutor::gateway {

int http_status(Errc code) {
  switch (code) {
    case Errc::UnknownLearner:
    case Errc::UnknownSession:
    case Errc::UnknownConcept: return 404;
    case Errc::ActiveSessionExists:
    case Errc::SequenceConflict: return 409;
    case Errc::IoFailure:
    case Errc::CorruptLog:
    case Errc::ConfigError: return 500;
    default: return 400;
  }
}

Json error_body(Errc code, const std::string& message) {
  return Json{{"code", to_string(code)}, {"message", message}};
}

Json to_json(const Progress& p) {
  Json records = Json::object();
  for (const auto& [id, rec] : p.concept_records) records[id] = tutor::to_json(rec);
  return Json{{"learner_id", p.learner_id},
              {"name", p.name},
              {"learner_level", p.learner_level ? Json(to_string(*p.learner_level)) : Json(nullptr)},
              {"style_profile", tutor::to_json(p.style_profile)},
              {"concept_records", std::move(records)},
              {"active_session", p.active_session ? Json(*p.active_session) : Json(nullptr)},
              {"next_concepts", p.next_concepts}};
}

Json to_json(const Step& s) {
  Json prompts = Json::array();
  for (const auto& p : s.prompts) prompts.push_back(tutor::to_json(p));
  return Json{{"session_id", s.session_id},
              {"state", to_string(s.state)},
              {"prompt", prompts.empty() ? Json(nullptr) : prompts.back()},
              {"prompts", std::move(prompts)}};
}

Json to_json(const Questionnaire& q) {
  Json items = Json::array();
  for (const auto& item : q.items) {
    Json options = Json::array();
    for (const auto& o : item.options) options.push_back(Json{{"id", o.id}, {"label", o.label}});
    items.push_back(Json{{"id", item.id}, {"prompt", item.prompt}, {"options", std::move(options)}});
  }
  return Json{{"items", std::move(items)}};
}

namespace {

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  Json j;
  try {
    j = Json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, std::string("request body: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::ParseError, "request body must be a JSON object");
  return j;
}

std::string required_string(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string())
    throw Error(Errc::InvalidArgument, std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

Input parse_input(const Json& body) {
  if (auto it = body.find("answer"); it != body.end()) {
    if (it->is_number_integer()) return Input::answer(it->get<int>());
    if (it->is_string()) {
      const std::string letter = channel::normalize(it->get<std::string>());
      if (letter.size() == 1 && letter[0] >= 'A' && letter[0] <= 'Z') return Input::answer(letter[0] - 'A');
    }
    throw Error(Errc::InvalidArgument, "\"answer\" must be a letter or a 0-based index");
  }
  if (auto it = body.find("next"); it != body.end() && (it->is_null() || it->is_boolean())) {
    if (it->is_null() || it->get<bool>()) return Input::next();
  }
  throw Error(Errc::InvalidArgument, "input needs \"answer\" or \"next\"");
}

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send(res, http_status(e.code()), error_body(e.code(), e.what()));
    } catch (const std::exception& e) {
      send(res, 500, error_body(Errc::IoFailure, e.what()));
    }
  };
}

}  // namespace

struct HttpGateway::Impl {
  TutorService& service;
  httplib::Server server;

  explicit Impl(TutorService& s) : service(s) { routes(); }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      send(res, 200, Json{{"status", "ok"}});
    });
    server.Get("/profiler", guarded([this](const httplib::Request&, httplib::Response& res) {
      send(res, 200, to_json(service.questionnaire()));
    }));
    server.Get("/learners", guarded([this](const httplib::Request&, httplib::Response& res) {
      send(res, 200, Json{{"learners", service.list_learners()}});
    }));
    server.Post("/learners", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      std::string name;
      if (body.contains("name")) name = required_string(body, "name");
      send(res, 201, Json{{"learner_id", service.create_learner(name)}});
    }));
    server.Post(R"(/learners/([^/]+)/profiler)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const Json body = parse_body(req);
                  auto it = body.find("answers");
                  if (it == body.end() || !it->is_array())
                    throw Error(Errc::InvalidArgument, "\"answers\" must be an array");
                  std::vector<ProfilerAnswer> answers;
                  for (const Json& a : *it) {
                    if (!a.is_object()) throw Error(Errc::InvalidArgument, "answer must be an object");
                    answers.push_back({required_string(a, "item"), required_string(a, "option")});
                  }
                  send(res, 200, tutor::to_json(service.submit_profile(req.matches[1], answers)));
                }));
    server.Get(R"(/learners/([^/]+)/progress)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 send(res, 200, to_json(service.progress(req.matches[1])));
               }));
    server.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      const std::string learner = required_string(body, "learner_id");
      std::string concept_id;
      if (body.contains("concept_id") && !body["concept_id"].is_null())
        concept_id = required_string(body, "concept_id");
      send(res, 201, to_json(service.start_session(learner, concept_id)));
    }));
    server.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, to_json(service.view(req.matches[1])));
    }));
    server.Post(R"(/sessions/([^/]+)/input)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const Input input = parse_input(parse_body(req));
                  send(res, 200, to_json(service.submit(req.matches[1], input)));
                }));
    server.Post("/sms/inbound", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      send(res, 200,
           Json{{"outbound", service.sms_inbound(required_string(body, "from"),
                                                 required_string(body, "text"))}});
    }));
  }
};

HttpGateway::HttpGateway(TutorService& service) : impl_(std::make_unique<Impl>(service)) {}
HttpGateway::~HttpGateway() = default;

bool HttpGateway::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int HttpGateway::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpGateway::listen_after_bind() { return impl_->server.listen_after_bind(); }
void HttpGateway::stop() { impl_->server.stop(); }
bool HttpGateway::is_running() const { return impl_->server.is_running(); }
void HttpGateway::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace tutor::gateway

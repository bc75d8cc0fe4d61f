#include "tutor/gateway/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json_reader.hpp"
#include "tutor/error.hpp"

namespace tutor::gateway {

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(Errc::ConfigError, message);
}

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base_dir.empty()) return base_dir / path;
  return path;
}

int bounded(long long v, long long lo, long long hi, const std::string& what) {
  if (v < lo || v > hi)
    config_error(what + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

void read_bands(const Json& j, TutorConfig& cfg) {
  if (!j.is_object()) config_error("difficulty_bands must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto level = parse_learner_level(it.key());
    if (!level) config_error("difficulty_bands: unknown learner level '" + it.key() + "'");
    const Json& arr = detail::expect_array(it.value(), "difficulty_bands." + it.key());
    std::set<int> band;
    for (const Json& d : arr) {
      band.insert(bounded(detail::expect_integer(d, "difficulty_bands." + it.key()), 1, 5,
                          "difficulty"));
    }
    if (band.empty()) config_error("difficulty_bands." + it.key() + " is empty");
    cfg.difficulty_bands[index_of(*level)].assign(band.begin(), band.end());
  }
}

void read_methods(const Json& j, TutorConfig& cfg) {
  if (!j.is_object()) config_error("style_methods must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto style = parse_style(it.key());
    if (!style) config_error("style_methods: unknown style '" + it.key() + "'");
    const Json& arr = detail::expect_array(it.value(), "style_methods." + it.key());
    if (arr.size() != 4) config_error("style_methods." + it.key() + " must rank all four methods");
    MethodPreference pref{};
    std::set<Method> seen;
    for (std::size_t i = 0; i < 4; ++i) {
      auto m = parse_method(detail::expect_string(arr[i], "style_methods." + it.key()));
      if (!m || !seen.insert(*m).second)
        config_error("style_methods." + it.key() + " must be a permutation of the methods");
      pref[i] = *m;
    }
    cfg.style_methods[index_of(*style)] = pref;
  }
}

}  // namespace

GatewayConfig parse_gateway_config(std::string_view json, GatewayConfig cfg,
                                   const std::filesystem::path& base_dir) {
  try {
    const Json doc = detail::parse_document(json);
    if (!doc.is_object()) config_error("config must be a JSON object");
    detail::ObjectReader r(doc, "$");
    if (r.optional("course")) cfg.course_path = resolve(base_dir, r.string("course"));
    if (r.optional("profiler")) cfg.profiler_path = resolve(base_dir, r.string("profiler"));
    if (r.optional("data_dir")) cfg.data_dir = resolve(base_dir, r.string("data_dir"));
    if (r.optional("listen")) parse_listen(r.string("listen"), cfg);
    if (const Json* f = r.optional("fsync")) {
      if (!f->is_boolean()) config_error("fsync must be a boolean");
      cfg.fsync = f->get<bool>();
    }
    if (r.optional("max_repeats"))
      cfg.tutor.max_repeats = bounded(r.integer("max_repeats"), 0, 10, "max_repeats");
    if (r.optional("min_questions_per_cell")) {
      cfg.tutor.min_questions_per_cell =
          bounded(r.integer("min_questions_per_cell"), 1, 100, "min_questions_per_cell");
    }
    if (r.optional("pretest_count"))
      cfg.tutor.pretest_count = bounded(r.integer("pretest_count"), 1, 100, "pretest_count");
    if (r.optional("posttest_count"))
      cfg.tutor.posttest_count = bounded(r.integer("posttest_count"), 1, 100, "posttest_count");
    if (const Json* b = r.optional("difficulty_bands")) read_bands(*b, cfg.tutor);
    if (const Json* m = r.optional("style_methods")) read_methods(*m, cfg.tutor);
    r.finish();
  } catch (const Error& e) {
    if (e.code() == Errc::ConfigError) throw;
    config_error(e.what());
  }
  return cfg;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GatewayConfig load_gateway_config(const std::filesystem::path& path, GatewayConfig base) {
  std::string bytes;
  try {
    bytes = read_file(path);
  } catch (const Error& e) {
    config_error(e.what());
  }
  return parse_gateway_config(bytes, std::move(base), path.parent_path());
}

GatewayConfig gateway_config_from_env() {
  const char* path = std::getenv("TUTOR_CONFIG");
  if (path == nullptr || *path == '\0') return {};
  return load_gateway_config(path);
}

void parse_listen(std::string_view text, GatewayConfig& cfg) {
  const auto colon = text.rfind(':');
  std::string host = colon == std::string_view::npos ? cfg.host : std::string(text.substr(0, colon));
  const std::string port = std::string(colon == std::string_view::npos ? text : text.substr(colon + 1));
  if (port.empty() || port.size() > 5 ||
      !std::all_of(port.begin(), port.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    config_error("bad listen address '" + std::string(text) + "'");
  }
  cfg.port = bounded(std::stoll(port), 0, 65535, "port");
  if (!host.empty()) cfg.host = std::move(host);
}

}  // namespace tutor::gateway

#pragma once

// Gateway configuration: file locations, listen address and the engine
// tunables. Read from the JSON file named by TUTOR_CONFIG, then overridden by
// command-line flags.

#include <filesystem>
#include <string>
#include <string_view>

#include "tutor/config.hpp"

namespace tutor::gateway {

struct GatewayConfig {
  std::filesystem::path course_path = "data/course.json";
  std::filesystem::path profiler_path = "data/profiler.json";
  std::filesystem::path data_dir = "var";
  std::string host = "127.0.0.1";
  int port = 8080;
  bool fsync = true;
  TutorConfig tutor;
};

/// Applies the keys of a config document on top of `base`. Relative paths
/// resolve against `base_dir`. Throws ConfigError.
GatewayConfig parse_gateway_config(std::string_view json, GatewayConfig base = {},
                                   const std::filesystem::path& base_dir = {});

/// Reads a config file. Throws ConfigError.
GatewayConfig load_gateway_config(const std::filesystem::path& path, GatewayConfig base = {});

/// Defaults, or the file named by $TUTOR_CONFIG when set.
GatewayConfig gateway_config_from_env();

/// "host:port" or ":port" or "port". Throws ConfigError.
void parse_listen(std::string_view text, GatewayConfig& cfg);

/// Whole file as bytes. Throws IoFailure.
std::string read_file(const std::filesystem::path& path);

}  // namespace tutor::gateway

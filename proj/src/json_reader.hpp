#pragma once

// Strict JSON document reading for the course and profiler files: unknown
// keys and wrong types are ParseErrors naming the JSON path.

#include <set>
#include <string>
#include <string_view>

#include "tutor/error.hpp"
#include "tutor/event.hpp"

namespace tutor::detail {

/// Parses bytes, reporting syntax errors with 1-based line/column.
Json parse_document(std::string_view bytes);

class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path);

  const Json& required(const std::string& key);
  const Json* optional(const std::string& key);

  std::string string(const std::string& key);
  long long integer(const std::string& key);
  const Json& array(const std::string& key);
  const Json& object(const std::string& key);

  /// Throws if the object has keys that were never asked for.
  void finish() const;

  std::string path_of(const std::string& key) const { return path_ + "." + key; }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string expect_string(const Json& j, const std::string& path);
long long expect_integer(const Json& j, const std::string& path);
const Json& expect_array(const Json& j, const std::string& path);

}  // namespace tutor::detail

#include "json_reader.hpp"

#include <algorithm>

namespace tutor::detail {

Json parse_document(std::string_view bytes) {
  try {
    return Json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, bytes.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (bytes[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
}

ObjectReader::ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw ParseError(path_ + ": expected an object");
}

const Json& ObjectReader::required(const std::string& key) {
  const Json* v = optional(key);
  if (!v) throw ParseError(path_of(key) + ": missing required field");
  return *v;
}

const Json* ObjectReader::optional(const std::string& key) {
  seen_.insert(key);
  auto it = j_.find(key);
  if (it == j_.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string ObjectReader::string(const std::string& key) {
  return expect_string(required(key), path_of(key));
}

long long ObjectReader::integer(const std::string& key) {
  return expect_integer(required(key), path_of(key));
}

const Json& ObjectReader::array(const std::string& key) {
  return expect_array(required(key), path_of(key));
}

const Json& ObjectReader::object(const std::string& key) {
  const Json& v = required(key);
  if (!v.is_object()) throw ParseError(path_of(key) + ": expected an object");
  return v;
}

void ObjectReader::finish() const {
  for (auto it = j_.begin(); it != j_.end(); ++it) {
    if (!seen_.count(it.key())) throw ParseError(path_of(it.key()) + ": unknown key");
  }
}

std::string expect_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get<std::string>();
}

long long expect_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  return j.get<long long>();
}

const Json& expect_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

}  // namespace tutor::detail

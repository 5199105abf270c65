#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sqsar {

// Flat "key = value" text, UTF-8, one pair per line, '#' starts a comment.
// Lists are comma separated. Duplicate keys and malformed lines are
// validation errors, as are keys nobody consumed.
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text);
  static KeyValueFile parse_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key);
  double get_double(const std::string& key);
  std::uint64_t get_uint(const std::string& key);
  bool get_bool(const std::string& key);
  std::vector<double> get_double_list(const std::string& key);
  std::vector<std::uint64_t> get_uint_list(const std::string& key);

  template <typename T>
  T get_or(const std::string& key, T fallback);

  // Throws listing any keys that were never read.
  void reject_unknown_keys() const;

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
  std::string raw(const std::string& key);
};

}  // namespace sqsar

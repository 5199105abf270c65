#include "sqsar/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sqsar {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, ',')) parts.push_back(trim(cur));
  return parts;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "' is not a number: '" + v + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config key '" + key +
                                "' is not a non-negative integer: '" + v + "'");
  return out;
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::string& text) {
  KeyValueFile kv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    if (!kv.values_.emplace(key, value).second)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool KeyValueFile::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string KeyValueFile::raw(const std::string& key) {
  auto it = values_.find(key);
  if (it == values_.end())
    throw std::invalid_argument("missing config key '" + key + "'");
  consumed_.insert(key);
  return it->second;
}

std::string KeyValueFile::get_string(const std::string& key) {
  return raw(key);
}

double KeyValueFile::get_double(const std::string& key) {
  return parse_double(key, raw(key));
}

std::uint64_t KeyValueFile::get_uint(const std::string& key) {
  return parse_uint(key, raw(key));
}

bool KeyValueFile::get_bool(const std::string& key) {
  std::string v = raw(key);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("config key '" + key +
                              "' must be true or false");
}

std::vector<double> KeyValueFile::get_double_list(const std::string& key) {
  std::vector<double> out;
  for (const auto& part : split_list(raw(key))) {
    if (part.empty())
      throw std::invalid_argument("config key '" + key + "' has an empty item");
    out.push_back(parse_double(key, part));
  }
  if (out.empty())
    throw std::invalid_argument("config key '" + key + "' lists no values");
  return out;
}

std::vector<std::uint64_t> KeyValueFile::get_uint_list(const std::string& key) {
  std::vector<std::uint64_t> out;
  for (const auto& part : split_list(raw(key))) {
    if (part.empty())
      throw std::invalid_argument("config key '" + key + "' has an empty item");
    out.push_back(parse_uint(key, part));
  }
  if (out.empty())
    throw std::invalid_argument("config key '" + key + "' lists no values");
  return out;
}

template <typename T>
T KeyValueFile::get_or(const std::string& key, T fallback) {
  if (!has(key)) return fallback;
  if constexpr (std::is_same_v<T, double>)
    return get_double(key);
  else if constexpr (std::is_same_v<T, bool>)
    return get_bool(key);
  else if constexpr (std::is_same_v<T, std::uint64_t>)
    return get_uint(key);
  else
    return get_string(key);
}

template double KeyValueFile::get_or<double>(const std::string&, double);
template bool KeyValueFile::get_or<bool>(const std::string&, bool);
template std::uint64_t KeyValueFile::get_or<std::uint64_t>(const std::string&,
                                                           std::uint64_t);
template std::string KeyValueFile::get_or<std::string>(const std::string&,
                                                       std::string);

void KeyValueFile::reject_unknown_keys() const {
  std::string unknown;
  for (const auto& [key, value] : values_)
    if (!consumed_.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
  if (!unknown.empty())
    throw std::invalid_argument("unknown config key(s): " + unknown);
}

}  // namespace sqsar

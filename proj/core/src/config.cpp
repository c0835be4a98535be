#include "fou/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fou/errors.hpp"

namespace fou {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

// Strips a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

double parse_number(std::string_view text, const std::string& key) {
  text = trim(text);
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError("config key '" + key + "': expected a number, got '" + std::string(text) + "'");
  return value;
}

bool is_number(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return !text.empty() && ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config config;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream stream{std::string(text)};
  std::string raw_line;
  while (std::getline(stream, raw_line)) {
    ++line_no;
    const std::string_view line = trim(strip_comment(raw_line));
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!valid_name(name)) throw ConfigError(where + ": invalid section name");
      section = std::string(name);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    const std::string_view name = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!valid_name(name)) throw ConfigError(where + ": invalid key");
    if (value.empty()) throw ConfigError(where + ": missing value");
    const bool bare = value.front() != '"' && value.front() != '[' &&
                      !(std::isdigit(static_cast<unsigned char>(value.front())) || value.front() == '-' ||
                        value.front() == '+' || value.front() == '.') &&
                      value != "true" && value != "false";
    if (bare) throw ConfigError(where + ": strings must be quoted");
    const std::string key = section.empty() ? std::string(name) : section + "." + std::string(name);
    if (config.has(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    config.set(key, std::string(value));
    if (value.front() == '[') {
      config.get_doubles(key, {});
    } else if (value.front() != '"' && value != "true" && value != "false" && !is_number(value)) {
      throw ConfigError(where + ": '" + std::string(value) + "' is not a number, boolean, array or quoted string");
    }
  }
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

void Config::set(const std::string& key, const std::string& raw_value) {
  std::string_view value = trim(raw_value);
  Entry entry;
  if (!value.empty() && value.front() == '"') {
    if (value.size() < 2 || value.back() != '"') throw ConfigError("config key '" + key + "': unterminated string");
    entry.raw = std::string(value.substr(1, value.size() - 2));
    entry.quoted = true;
  } else {
    if (!value.empty() && value.front() == '[' && value.back() != ']')
      throw ConfigError("config key '" + key + "': unterminated array");
    entry.raw = std::string(value);
  }
  entries_[key] = entry;
}

void Config::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  const std::string key(trim(assignment.substr(0, eq)));
  const std::string_view value = trim(assignment.substr(eq + 1));
  if (key.empty() || value.empty()) throw ConfigError("override '" + std::string(assignment) + "' is incomplete");
  set(key, std::string(value));
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const auto& [key, _] : entries_) out.push_back(key);
  return out;
}

const Config::Entry* Config::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->raw : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  if (e->quoted) throw ConfigError("config key '" + key + "': expected a number, got a string");
  return parse_number(e->raw, key);
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  std::int64_t value = 0;
  const std::string_view text = trim(e->raw);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (e->quoted || ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("config key '" + key + "': expected an integer, got '" + e->raw + "'");
  return value;
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  std::uint64_t value = 0;
  const std::string_view text = trim(e->raw);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (e->quoted || ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + e->raw + "'");
  return value;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  if (!e->quoted && e->raw == "true") return true;
  if (!e->quoted && e->raw == "false") return false;
  throw ConfigError("config key '" + key + "': expected true or false");
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  std::string_view text = trim(e->raw);
  if (e->quoted) throw ConfigError("config key '" + key + "': expected an array of numbers");
  if (text.empty() || text.front() != '[') return {parse_number(text, key)};
  text = trim(text.substr(1, text.size() - 2));
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma), key));
    if (comma == std::string_view::npos) break;
    text = trim(text.substr(comma + 1));
  }
  return out;
}

std::string Config::to_toml() const {
  std::ostringstream out;
  std::string current = "\x01";
  // Top-level keys first, then sections in order.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& [key, entry] : entries_) {
      const auto dot = key.find('.');
      const bool top = dot == std::string::npos;
      if ((pass == 0) != top) continue;
      const std::string section = top ? "" : key.substr(0, dot);
      const std::string name = top ? key : key.substr(dot + 1);
      if (!top && section != current) {
        if (out.tellp() > 0) out << "\n";
        out << "[" << section << "]\n";
        current = section;
      }
      const bool literal = entry.raw == "true" || entry.raw == "false" || is_number(entry.raw) ||
                           (!entry.raw.empty() && entry.raw.front() == '[');
      const bool quote = entry.quoted || !literal;
      out << name << " = " << (quote ? "\"" + entry.raw + "\"" : entry.raw) << "\n";
    }
  }
  return out.str();
}

}  // namespace fou

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fou {

/// Flat TOML-style configuration: `[section]` headers, `key = value` lines,
/// `#` comments. Values are numbers, booleans, "strings" or [number arrays].
/// Keys are addressed as "section.key" (or "key" before any section).
/// Every malformed line or ill-typed access throws ConfigError.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  // "section.key=value"; the value may be a bare word.
  void apply_override(std::string_view assignment);
  void set(const std::string& key, const std::string& raw_value);

  void erase(const std::string& key) { entries_.erase(key); }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::vector<std::string> keys() const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;

  // Canonical TOML text of every entry, grouped by section in key order.
  std::string to_toml() const;

 private:
  struct Entry {
    std::string raw;  // unquoted for strings
    bool quoted = false;
  };
  const Entry* find(const std::string& key) const;
  std::map<std::string, Entry> entries_;
};

}  // namespace fou

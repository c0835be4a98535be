#include "fou/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fou/errors.hpp"

namespace fou {

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw InternalError("format_double: buffer too small");
  return std::string(buffer, ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw DomainError("not a number: '" + std::string(text) + "'");
  return value;
}

std::string format_path_csv(const GridPath& path) {
  validate(path);
  std::string out = "t,x\n";
  for (std::size_t i = 0; i < path.values.size(); ++i) {
    out += format_double(path.time(i));
    out += ',';
    out += format_double(path.values[i]);
    out += '\n';
  }
  return out;
}

void write_path_csv(const std::filesystem::path& file, const GridPath& path) {
  write_text(file, format_path_csv(path));
}

GridPath parse_path_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw DomainError("path CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,x") throw DomainError("path CSV must start with the header 't,x'");
  std::vector<double> times, values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DomainError("path CSV line " + std::to_string(line_no) + ": expected two columns");
    times.push_back(parse_double(std::string_view(line).substr(0, comma)));
    values.push_back(parse_double(std::string_view(line).substr(comma + 1)));
  }
  if (values.size() < 2) throw DomainError("path CSV needs at least two rows");
  const std::size_t n = values.size() - 1;
  GridPath path;
  path.dt = times.back() / static_cast<double>(n);
  if (!(path.dt > 0.0)) throw DomainError("path CSV: time stamps must increase");
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::abs(times[i] - path.time(i)) > 1e-9 * times.back())
      throw DomainError("path CSV: grid is not uniform from t = 0 (row " + std::to_string(i + 2) + ")");
  }
  path.values = std::move(values);
  return path;
}

GridPath read_path_csv(const std::filesystem::path& file) { return parse_path_csv(read_text(file)); }

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + file.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text(const std::filesystem::path& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for '" + file.string() + "'");
}

}  // namespace fou

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fou/grid_path.hpp"

namespace fou {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict parse of a full token; throws DomainError on junk.
double parse_double(std::string_view text);

/// "t,x" header then one row per grid point.
std::string format_path_csv(const GridPath& path);
void write_path_csv(const std::filesystem::path& file, const GridPath& path);

/// Reads a "t,x" CSV. The grid must be uniform and start at t = 0
/// (relative tolerance 1e−9); dt is taken from the last time stamp.
GridPath parse_path_csv(std::string_view text);
GridPath read_path_csv(const std::filesystem::path& file);

// Whole-file helpers; throw std::runtime_error on I/O failure.
std::string read_text(const std::filesystem::path& file);
void write_text(const std::filesystem::path& file, std::string_view text);

}  // namespace fou

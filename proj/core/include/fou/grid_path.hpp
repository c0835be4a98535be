#pragma once

#include <cstddef>
#include <vector>

namespace fou {

// Trajectory on the uniform grid t_i = i·dt, i = 0..n.
struct GridPath {
  double dt = 0.0;
  std::vector<double> values;

  std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
  double horizon() const { return dt * static_cast<double>(steps()); }
  double time(std::size_t i) const { return dt * static_cast<double>(i); }
};

// Throws DomainError unless dt > 0 and the path has at least two points.
void validate(const GridPath& path);

}  // namespace fou

#include "fou/linalg.hpp"

#include <algorithm>

#include "fou/errors.hpp"

namespace fou {

Mat2 inverse(const Mat2& m) {
  const double det = m.det();
  if (det == 0.0) throw DomainError("inverse: singular 2x2 matrix");
  return {m.d / det, -m.b / det, -m.c / det, m.a / det};
}

Vec2 solve(const Mat2& m, Vec2 rhs) {
  const double det = m.det();
  if (det == 0.0) throw DomainError("solve: singular 2x2 matrix");
  return {(rhs.x * m.d - m.b * rhs.y) / det, (m.a * rhs.y - m.c * rhs.x) / det};
}

SymEigen sym_eigen(const Mat2& m) {
  const double mean = 0.5 * (m.a + m.d);
  const double half_diff = 0.5 * (m.a - m.d);
  const double radius = std::hypot(half_diff, m.b);
  SymEigen out;
  out.hi = mean + radius;
  out.lo = mean - radius;
  if (radius == 0.0) {
    out.hi_vector = {1.0, 0.0};
    return out;
  }
  // (A - lo I) has the hi-eigenvector in its column space; pick the better
  // conditioned column.
  Vec2 c1{m.a - out.lo, m.b};
  Vec2 c2{m.b, m.d - out.lo};
  Vec2 v = norm(c1) >= norm(c2) ? c1 : c2;
  out.hi_vector = (1.0 / norm(v)) * v;
  return out;
}

bool is_spd(const Mat2& m) {
  if (!(m.a > 0.0)) return false;
  const double l21 = m.c / std::sqrt(m.a);
  const double rest = m.d - l21 * l21;
  return rest > 0.0 && std::abs(m.b - m.c) <= 1e-12 * std::max(std::abs(m.b), 1.0);
}

double max_abs_diff(const Mat2& m, const Mat2& n) {
  return std::max({std::abs(m.a - n.a), std::abs(m.b - n.b), std::abs(m.c - n.c),
                   std::abs(m.d - n.d)});
}

}  // namespace fou

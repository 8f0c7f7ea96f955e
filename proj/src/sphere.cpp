#include "minsurf/sphere.hpp"

#include <algorithm>

namespace minsurf {

bool antipodally_closed(std::span<const QPoint> points) {
  const std::set<QPoint> s(points.begin(), points.end());
  return std::all_of(s.begin(), s.end(), [&s](const QPoint& p) { return s.count(antipodal(p)) == 1; });
}

Rp2Count rp2_count(std::span<const QPoint> points) {
  Rp2Count out;
  std::set<RP2Point<QComplex>> classes;
  for (const auto& p : points) classes.insert(to_rp2(p));
  out.count = static_cast<int>(classes.size());
  out.antipodally_closed = antipodally_closed(points);
  if (!out.antipodally_closed)
    out.warnings.push_back("point set is not closed under the antipodal map; RP^2 count is a lower bound");
  return out;
}

std::string to_string(const QPoint& p) { return p.is_infinity() ? std::string("inf") : p.value().str(); }

}  // namespace minsurf

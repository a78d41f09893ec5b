#include "evacrec/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace evacrec {

double haversine_m(Coordinate a, Coordinate b) noexcept {
  constexpr double kDeg = std::numbers::pi / 180.0;
  const double dlat = (b.lat - a.lat) * kDeg;
  const double dlon = (b.lon - a.lon) * kDeg;
  const double s = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(a.lat * kDeg) * std::cos(b.lat * kDeg) *
                       std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::clamp(s, 0.0, 1.0)));
}

}  // namespace evacrec

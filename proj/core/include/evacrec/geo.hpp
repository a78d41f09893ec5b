#pragma once

namespace evacrec {

inline constexpr double kEarthRadiusM = 6'371'000.0;

struct Coordinate {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

// Great-circle distance in meters on a sphere of radius kEarthRadiusM.
double haversine_m(Coordinate a, Coordinate b) noexcept;

}  // namespace evacrec

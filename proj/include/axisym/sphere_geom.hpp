#pragma once

#include <cstddef>
#include <vector>

namespace axisym {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kFourPi = 4.0 * kPi;

/// A location on the unit sphere, stored as colatitude in [0, pi]
/// (polar angle measured from the north pole) and longitude in [0, 2*pi).
/// Construction rejects out-of-range coordinates; longitudes are reduced
/// mod 2*pi only by the explicit `normalized` constructor, never silently.
class SpherePoint {
 public:
  SpherePoint(double colat, double lon);

  /// Accepts any finite longitude and reduces it to [0, 2*pi).
  static SpherePoint normalized(double colat, double lon);

  double colat() const { return colat_; }
  double lon() const { return lon_; }

 private:
  double colat_;
  double lon_;
};

/// Rectangular colatitude x longitude grid. Both axes are non-empty and
/// strictly increasing, with entries in the SpherePoint ranges.
class LatLonGrid {
 public:
  LatLonGrid(std::vector<double> colats, std::vector<double> lons);

  const std::vector<double>& colats() const { return colats_; }
  const std::vector<double>& lons() const { return lons_; }
  std::size_t n_colat() const { return colats_.size(); }
  std::size_t n_lon() const { return lons_.size(); }
  std::size_t size() const { return colats_.size() * lons_.size(); }

 private:
  std::vector<double> colats_;
  std::vector<double> lons_;
};

/// Cell-midpoint grid: colatitudes at (i+1/2)*pi/n_colat for i < n_colat
/// (equally spaced in the open interval (0, pi)), longitudes at
/// j*2*pi/n_lon for j < n_lon.
LatLonGrid uniform_grid(std::size_t n_colat, std::size_t n_lon);

/// Great-circle distance in radians, always in [0, pi]. The arcsine
/// argument is clamped to [0, 1] so rounding near antipodes cannot
/// produce NaN.
double great_circle_distance(const SpherePoint& p1, const SpherePoint& p2);

}  // namespace axisym

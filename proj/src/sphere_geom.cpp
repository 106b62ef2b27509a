#include "axisym/sphere_geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace axisym {

SpherePoint::SpherePoint(double colat, double lon) : colat_(colat), lon_(lon) {
  if (!(colat >= 0.0 && colat <= kPi))
    throw std::invalid_argument("SpherePoint: colatitude " + std::to_string(colat) +
                                " outside [0, pi]");
  if (!(lon >= 0.0 && lon < kTwoPi))
    throw std::invalid_argument("SpherePoint: longitude " + std::to_string(lon) +
                                " outside [0, 2*pi)");
}

SpherePoint SpherePoint::normalized(double colat, double lon) {
  if (!std::isfinite(lon)) throw std::invalid_argument("SpherePoint: non-finite longitude");
  double r = std::fmod(lon, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod can round back up to 2*pi
  return SpherePoint(colat, r);
}

LatLonGrid::LatLonGrid(std::vector<double> colats, std::vector<double> lons)
    : colats_(std::move(colats)), lons_(std::move(lons)) {
  if (colats_.empty() || lons_.empty())
    throw std::invalid_argument("LatLonGrid: axes must be non-empty");
  for (std::size_t i = 0; i < colats_.size(); ++i) {
    if (!(colats_[i] >= 0.0 && colats_[i] <= kPi))
      throw std::invalid_argument("LatLonGrid: colatitude outside [0, pi]");
    if (i > 0 && !(colats_[i] > colats_[i - 1]))
      throw std::invalid_argument("LatLonGrid: colatitudes not strictly increasing");
  }
  for (std::size_t j = 0; j < lons_.size(); ++j) {
    if (!(lons_[j] >= 0.0 && lons_[j] < kTwoPi))
      throw std::invalid_argument("LatLonGrid: longitude outside [0, 2*pi)");
    if (j > 0 && !(lons_[j] > lons_[j - 1]))
      throw std::invalid_argument("LatLonGrid: longitudes not strictly increasing");
  }
}

LatLonGrid uniform_grid(std::size_t n_colat, std::size_t n_lon) {
  if (n_colat == 0 || n_lon == 0)
    throw std::invalid_argument("uniform_grid: counts must be positive");
  std::vector<double> colats(n_colat), lons(n_lon);
  for (std::size_t i = 0; i < n_colat; ++i)
    colats[i] = (static_cast<double>(i) + 0.5) * kPi / static_cast<double>(n_colat);
  for (std::size_t j = 0; j < n_lon; ++j)
    lons[j] = static_cast<double>(j) * kTwoPi / static_cast<double>(n_lon);
  return LatLonGrid(std::move(colats), std::move(lons));
}

double great_circle_distance(const SpherePoint& p1, const SpherePoint& p2) {
  const double sdl = std::sin(0.5 * (p1.colat() - p2.colat()));
  const double sdp = std::sin(0.5 * (p1.lon() - p2.lon()));
  double h = sdl * sdl + std::sin(p1.colat()) * std::sin(p2.colat()) * sdp * sdp;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * std::asin(std::sqrt(h));
}

}  // namespace axisym

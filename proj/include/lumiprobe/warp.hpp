// Recentering warp: resamples a panorama as seen from a virtual camera pushed
// off the sphere center, plus the flat-surface heuristic that picks the warp
// angle from a crop's surface normals.
#pragma once

#include <Eigen/Core>

#include "lumiprobe/core/image.hpp"
#include "lumiprobe/geometry.hpp"

namespace lumiprobe {

inline const double kBetaMax = deg_to_rad(75.0);

struct WarpParams {
  double beta = 0.0;          // radians in [0, kBetaMax]
  double axis_azimuth = 0.0;  // horizontal displacement direction
};

struct RecenterRay {
  double t;                // distance from the displaced camera to the sphere
  Eigen::Vector3d source;  // unit direction in the original panorama
};

// Displacement of sin(beta) along +z. t is the nonnegative root of
//   t^2 + 2 v_z t sin(beta) + sin^2(beta) - 1 = 0,
// and source = v*t + (0,0,sin(beta)) lies on the unit sphere.
RecenterRay recenter_ray(const Eigen::Vector3d& v, double beta);

// Inverse-mapped warp: every output pixel direction samples the input at its
// recentered source. beta == 0 returns the input unchanged.
Image recenter_pano(const Image& pano, const WarpParams& params);
Plane recenter_pano(const Plane& pano, const WarpParams& params);

struct BetaConfig {
  double flat_angle = deg_to_rad(30.0);  // max angle(normal, up) for "flat"
  double min_region_fraction = 0.005;    // of crop area
};

// Picks beta from the lowest pixel of the largest 4-connected flat region of a
// unit-normal map aligned with the crop; beta = |elevation| of that point
// back-projected onto the panorama. No usable flat region means no warp.
WarpParams select_beta(const Image& normals, const CropSpec& spec, int pano_width,
                       int pano_height, const BetaConfig& cfg = {});

}  // namespace lumiprobe

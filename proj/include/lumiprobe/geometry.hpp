// Equirectangular sphere geometry: pixel/direction conversion, solid angles,
// rectilinear crops and whole-sphere rotations.
//
// Conventions: +y up, +z forward at azimuth 0, azimuth 0 at the image center
// column, pixel centers at half-integer continuous coordinates. Azimuth grows
// to the right (+x side), elevation grows upward.
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "lumiprobe/core/image.hpp"

namespace lumiprobe {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Row index of the first excluded row when the bottom 15% of a panorama is
// discarded (watermark band).
inline int bottom_exclusion_row(int height) { return height - (height * 15) / 100; }

// Virtual pinhole camera aimed into the panorama.
struct CropSpec {
  double azimuth = 0.0;    // radians in [-pi, pi)
  double elevation = 0.0;  // radians in [-pi/2, pi/2]
  double hfov = deg_to_rad(60.0);
  int width = 256;
  int height = 192;
};

void validate_crop_spec(const CropSpec& spec);

// Continuous pixel coordinates -> unit direction. u in [0, W), v in [0, H).
Eigen::Vector3d pixel_to_dir(double u, double v, int width, int height);

// Inverse of pixel_to_dir; poles map to (W/2, 0) / (W/2, H) by convention.
Eigen::Vector2d dir_to_pixel(const Eigen::Vector3d& d, int width, int height);

inline double azimuth_of(const Eigen::Vector3d& d) { return std::atan2(d.x(), d.z()); }
inline double elevation_of(const Eigen::Vector3d& d) {
  return std::asin(std::clamp(d.y() / d.norm(), -1.0, 1.0));
}

// Elevation of the center of row r.
inline double row_elevation(int r, int height) {
  return kPi / 2.0 - kPi * (static_cast<double>(r) + 0.5) / height;
}

// Per-pixel steradians from the row edge elevations; sums to 4*pi.
Plane solid_angles(int width, int height);

// Bilinear sample with azimuthal wrap and pole clamping. (u, v) are continuous
// pixel coordinates (centers at half-integers).
double sample_pano(const Plane& plane, double u, double v);
Eigen::Vector3d sample_pano3(const Image& img, double u, double v);

// Direction through continuous crop pixel (x right, y down, origin top-left).
Eigen::Vector3d crop_pixel_ray(const CropSpec& spec, double x, double y);

// Rectilinear projection of the panorama; bilinear sampling.
Image extract_crop(const Image& pano, const CropSpec& spec);

// Shifts content westward: output at azimuth a shows input at azimuth a + dphi,
// so rotate_azimuth(p, spec.azimuth) centers the crop direction. Integer-column
// shifts are exact.
Image rotate_azimuth(const Image& pano, double dphi);
Plane rotate_azimuth(const Plane& pano, double dphi);

// 90 degree rotation about the pitch (x) axis, bringing the zenith onto the
// horizon. inverse=true applies the opposite rotation.
Image rotate_pitch90(const Image& pano, bool inverse = false);
Plane rotate_pitch90(const Plane& pano, bool inverse = false);

}  // namespace lumiprobe

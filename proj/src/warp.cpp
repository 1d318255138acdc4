#include "lumiprobe/warp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lumiprobe/core/parallel.hpp"

namespace lumiprobe {

RecenterRay recenter_ray(const Eigen::Vector3d& v, double beta) {
  const double sb = std::sin(beta);
  if (!(sb < 1.0)) throw std::domain_error("warp angle places the camera on the sphere");
  // Unit |v| makes the quadratic monic; the root product sb^2 - 1 <= 0
  // guarantees exactly one nonnegative root.
  const double disc = v.z() * v.z() * sb * sb - sb * sb + 1.0;
  const double t = -v.z() * sb + std::sqrt(disc);
  RecenterRay r;
  r.t = t;
  r.source = v * t + Eigen::Vector3d(0.0, 0.0, sb);
  return r;
}

Plane recenter_pano(const Plane& pano, const WarpParams& params) {
  if (params.beta == 0.0) return pano;
  const int w = static_cast<int>(pano.cols());
  const int h = static_cast<int>(pano.rows());
  const double ca = std::cos(params.axis_azimuth), sa = std::sin(params.axis_azimuth);
  Plane out(h, w);
  parallel_for_chunks(0, h, [&](int r0, int r1) {
    for (int r = r0; r < r1; ++r) {
      for (int c = 0; c < w; ++c) {
        const Eigen::Vector3d v = pixel_to_dir(c + 0.5, r + 0.5, w, h);
        // Rotate about +y so the displacement axis lands on +z, warp, undo.
        const Eigen::Vector3d vc(ca * v.x() - sa * v.z(), v.y(), sa * v.x() + ca * v.z());
        const Eigen::Vector3d sc = recenter_ray(vc, params.beta).source;
        const Eigen::Vector3d src(ca * sc.x() + sa * sc.z(), sc.y(),
                                  -sa * sc.x() + ca * sc.z());
        const Eigen::Vector2d px = dir_to_pixel(src, w, h);
        out(r, c) = sample_pano(pano, px.x(), px.y());
      }
    }
  });
  return out;
}

Image recenter_pano(const Image& pano, const WarpParams& params) {
  if (params.beta == 0.0) return pano;
  Image out;
  for (int c = 0; c < pano.channels(); ++c) out.add_plane(recenter_pano(pano.plane(c), params));
  return out;
}

namespace {

// Largest 4-connected region of flat pixels; ties broken by the lower (larger
// mean row) region.
struct FlatRegion {
  int area = 0;
  double centroid_row = -1.0;
  int lowest_row = -1;
  int lowest_col = -1;
};

FlatRegion largest_flat_region(const MaskPlane& flat) {
  const int h = static_cast<int>(flat.rows());
  const int w = static_cast<int>(flat.cols());
  MaskPlane seen = MaskPlane::Zero(h, w);
  FlatRegion best;
  std::vector<std::pair<int, int>> stack;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!flat(r, c) || seen(r, c)) continue;
      FlatRegion region;
      double row_sum = 0.0;
      stack.push_back({r, c});
      seen(r, c) = 1;
      while (!stack.empty()) {
        const auto [y, x] = stack.back();
        stack.pop_back();
        ++region.area;
        row_sum += y;
        if (y > region.lowest_row || (y == region.lowest_row && x < region.lowest_col)) {
          region.lowest_row = y;
          region.lowest_col = x;
        }
        const int ny[4] = {y - 1, y + 1, y, y};
        const int nx[4] = {x, x, x - 1, x + 1};
        for (int k = 0; k < 4; ++k) {
          if (ny[k] < 0 || ny[k] >= h || nx[k] < 0 || nx[k] >= w) continue;
          if (!flat(ny[k], nx[k]) || seen(ny[k], nx[k])) continue;
          seen(ny[k], nx[k]) = 1;
          stack.push_back({ny[k], nx[k]});
        }
      }
      region.centroid_row = row_sum / region.area;
      if (region.area > best.area ||
          (region.area == best.area && region.centroid_row > best.centroid_row))
        best = region;
    }
  }
  return best;
}

}  // namespace

WarpParams select_beta(const Image& normals, const CropSpec& spec, int pano_width,
                       int pano_height, const BetaConfig& cfg) {
  if (normals.channels() != 3) throw std::domain_error("normals must have 3 channels");
  if (normals.width() != spec.width || normals.height() != spec.height)
    throw std::domain_error("normals dimensions must match the crop");
  const int h = normals.height(), w = normals.width();
  const double cos_flat = std::cos(cfg.flat_angle);
  MaskPlane flat(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const Eigen::Vector3d n(normals.at(0, r, c), normals.at(1, r, c), normals.at(2, r, c));
      const double len = n.norm();
      flat(r, c) = (len > 1e-9 && n.y() / len > cos_flat) ? 1 : 0;
    }
  }
  WarpParams params;
  params.axis_azimuth = spec.azimuth;
  const FlatRegion region = largest_flat_region(flat);
  if (region.area < cfg.min_region_fraction * w * h) return params;  // no warp

  const Eigen::Vector3d ray =
      crop_pixel_ray(spec, region.lowest_col + 0.5, region.lowest_row + 0.5);
  const Eigen::Vector2d px = dir_to_pixel(ray, pano_width, pano_height);
  const double elev = kPi / 2.0 - kPi * px.y() / pano_height;
  params.beta = std::min(std::abs(elev), kBetaMax);
  return params;
}

}  // namespace lumiprobe

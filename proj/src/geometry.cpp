#include "lumiprobe/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "lumiprobe/core/parallel.hpp"

namespace lumiprobe {

void validate_crop_spec(const CropSpec& spec) {
  if (!(spec.hfov > 0.0 && spec.hfov < kPi))
    throw std::domain_error("crop hfov must lie in (0, pi)");
  if (spec.width < 1 || spec.height < 1)
    throw std::domain_error("crop dimensions must be positive");
  if (spec.elevation < -kPi / 2.0 || spec.elevation > kPi / 2.0)
    throw std::domain_error("crop elevation out of range");
}

Eigen::Vector3d pixel_to_dir(double u, double v, int width, int height) {
  if (u < 0.0 || u >= width || v < 0.0 || v > height)
    throw std::domain_error("pixel coordinates out of range");
  const double phi = kTwoPi * u / width - kPi;
  const double lambda = kPi / 2.0 - kPi * v / height;
  const double cl = std::cos(lambda);
  return {cl * std::sin(phi), std::sin(lambda), cl * std::cos(phi)};
}

Eigen::Vector2d dir_to_pixel(const Eigen::Vector3d& d, int width, int height) {
  const double y = std::clamp(d.y(), -1.0, 1.0);
  if (std::abs(y) >= 1.0 - 1e-15)
    return {width / 2.0, y > 0.0 ? 0.0 : static_cast<double>(height)};
  const double phi = std::atan2(d.x(), d.z());
  const double lambda = std::asin(y);
  double u = (phi + kPi) * width / kTwoPi;
  if (u >= width) u -= width;
  const double v = (kPi / 2.0 - lambda) * height / kPi;
  return {u, v};
}

Plane solid_angles(int width, int height) {
  validate_panorama_dims(width, height);
  Plane s(height, width);
  const double dphi = kTwoPi / width;
  for (int r = 0; r < height; ++r) {
    const double top = kPi / 2.0 - kPi * r / height;
    const double bottom = kPi / 2.0 - kPi * (r + 1) / height;
    s.row(r).setConstant(dphi * (std::sin(top) - std::sin(bottom)));
  }
  return s;
}

double sample_pano(const Plane& plane, double u, double v) {
  const int w = static_cast<int>(plane.cols());
  const int h = static_cast<int>(plane.rows());
  const double x = u - 0.5;
  const double y = v - 0.5;
  double x0f = std::floor(x);
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0f;
  const double fy = y - static_cast<double>(y0);
  int x0 = static_cast<int>(x0f) % w;
  if (x0 < 0) x0 += w;
  const int x1 = (x0 + 1) % w;
  const int y0c = std::clamp(y0, 0, h - 1);
  const int y1c = std::clamp(y0 + 1, 0, h - 1);
  const double a = plane(y0c, x0) * (1.0 - fx) + plane(y0c, x1) * fx;
  const double b = plane(y1c, x0) * (1.0 - fx) + plane(y1c, x1) * fx;
  return a * (1.0 - fy) + b * fy;
}

Eigen::Vector3d sample_pano3(const Image& img, double u, double v) {
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (int c = 0; c < img.channels() && c < 3; ++c) out[c] = sample_pano(img.plane(c), u, v);
  return out;
}

namespace {

struct CropFrame {
  Eigen::Vector3d forward, right, up;
  double tan_h, tan_v;
};

CropFrame crop_frame(const CropSpec& spec) {
  CropFrame f;
  const double ce = std::cos(spec.elevation), se = std::sin(spec.elevation);
  const double ca = std::cos(spec.azimuth), sa = std::sin(spec.azimuth);
  f.forward = {ce * sa, se, ce * ca};
  const Eigen::Vector3d world_up(0.0, 1.0, 0.0);
  f.right = world_up.cross(f.forward).normalized();
  f.up = f.forward.cross(f.right).normalized();
  f.tan_h = std::tan(spec.hfov / 2.0);
  // Vertical FOV from the aspect ratio.
  f.tan_v = f.tan_h * static_cast<double>(spec.height) / spec.width;
  return f;
}

// Inverse-maps every output pixel of an equirectangular image through rot.
template <typename SampleFn>
Plane remap_sphere(int width, int height, const SampleFn& sample) {
  Plane out(height, width);
  parallel_for_chunks(0, height, [&](int r0, int r1) {
    for (int r = r0; r < r1; ++r)
      for (int c = 0; c < width; ++c) out(r, c) = sample(c + 0.5, r + 0.5);
  });
  return out;
}

}  // namespace

Eigen::Vector3d crop_pixel_ray(const CropSpec& spec, double x, double y) {
  const CropFrame f = crop_frame(spec);
  const double ndc_x = (2.0 * x / spec.width - 1.0) * f.tan_h;
  const double ndc_y = (1.0 - 2.0 * y / spec.height) * f.tan_v;
  return (f.forward + ndc_x * f.right + ndc_y * f.up).normalized();
}

Image extract_crop(const Image& pano, const CropSpec& spec) {
  validate_crop_spec(spec);
  const int w = pano.width(), h = pano.height();
  const CropFrame f = crop_frame(spec);
  Image out(spec.width, spec.height, pano.channels());
  parallel_for_chunks(0, spec.height, [&](int r0, int r1) {
    for (int r = r0; r < r1; ++r) {
      const double ndc_y = (1.0 - 2.0 * (r + 0.5) / spec.height) * f.tan_v;
      for (int c = 0; c < spec.width; ++c) {
        const double ndc_x = (2.0 * (c + 0.5) / spec.width - 1.0) * f.tan_h;
        const Eigen::Vector3d dir =
            (f.forward + ndc_x * f.right + ndc_y * f.up).normalized();
        const Eigen::Vector2d px = dir_to_pixel(dir, w, h);
        for (int ch = 0; ch < pano.channels(); ++ch)
          out.at(ch, r, c) = sample_pano(pano.plane(ch), px.x(), px.y());
      }
    }
  });
  return out;
}

Plane rotate_azimuth(const Plane& pano, double dphi) {
  const int w = static_cast<int>(pano.cols());
  const int h = static_cast<int>(pano.rows());
  double shift = dphi * w / kTwoPi;
  shift -= std::floor(shift / w) * w;  // into [0, w)
  const double rounded = std::round(shift);
  if (std::abs(shift - rounded) < 1e-12) {
    // Exact column shift.
    const int k = static_cast<int>(rounded) % w;
    Plane out(h, w);
    if (k == 0) return pano;
    out.leftCols(w - k) = pano.rightCols(w - k);
    out.rightCols(k) = pano.leftCols(k);
    return out;
  }
  return remap_sphere(w, h, [&](double u, double v) {
    return sample_pano(pano, u + shift, v);
  });
}

Image rotate_azimuth(const Image& pano, double dphi) {
  Image out;
  for (int c = 0; c < pano.channels(); ++c) out.add_plane(rotate_azimuth(pano.plane(c), dphi));
  return out;
}

Plane rotate_pitch90(const Plane& pano, bool inverse) {
  const int w = static_cast<int>(pano.cols());
  const int h = static_cast<int>(pano.rows());
  // Output direction d samples the input at R*d; R maps (x,y,z) -> (x,-z,y)
  // for the forward rotation, so the original zenith appears on the horizon.
  const double sign = inverse ? -1.0 : 1.0;
  return remap_sphere(w, h, [&](double u, double v) {
    const Eigen::Vector3d d = pixel_to_dir(std::min(u, w - 1e-9), std::min(v, h - 1e-9), w, h);
    const Eigen::Vector3d src(d.x(), -sign * d.z(), sign * d.y());
    const Eigen::Vector2d px = dir_to_pixel(src, w, h);
    return sample_pano(pano, px.x(), px.y());
  });
}

Image rotate_pitch90(const Image& pano, bool inverse) {
  Image out;
  for (int c = 0; c < pano.channels(); ++c) out.add_plane(rotate_pitch90(pano.plane(c), inverse));
  return out;
}

}  // namespace lumiprobe

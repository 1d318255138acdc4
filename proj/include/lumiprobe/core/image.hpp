// Dense image container: one Eigen plane per channel, row-major, origin top-left.
#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lumiprobe {

template <typename Scalar>
using PlaneT = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Plane = PlaneT<double>;
using MaskPlane = PlaneT<unsigned char>;

template <typename Scalar>
class ImageT {
 public:
  using PlaneType = PlaneT<Scalar>;

  ImageT() = default;
  ImageT(int width, int height, int channels, Scalar fill = Scalar(0)) {
    if (width < 1 || height < 1 || channels < 1)
      throw std::domain_error("image dimensions must be positive");
    planes_.reserve(static_cast<std::size_t>(channels));
    for (int c = 0; c < channels; ++c)
      planes_.push_back(PlaneType::Constant(height, width, fill));
  }
  explicit ImageT(PlaneType plane) { planes_.push_back(std::move(plane)); }

  int width() const { return planes_.empty() ? 0 : static_cast<int>(planes_[0].cols()); }
  int height() const { return planes_.empty() ? 0 : static_cast<int>(planes_[0].rows()); }
  int channels() const { return static_cast<int>(planes_.size()); }
  bool empty() const { return planes_.empty(); }

  PlaneType& plane(int c) { return planes_.at(static_cast<std::size_t>(c)); }
  const PlaneType& plane(int c) const { return planes_.at(static_cast<std::size_t>(c)); }

  Scalar& at(int c, int y, int x) { return planes_[static_cast<std::size_t>(c)](y, x); }
  Scalar at(int c, int y, int x) const { return planes_[static_cast<std::size_t>(c)](y, x); }

  void add_plane(PlaneType plane) {
    if (!planes_.empty() &&
        (plane.rows() != planes_[0].rows() || plane.cols() != planes_[0].cols()))
      throw std::domain_error("plane dimensions mismatch");
    planes_.push_back(std::move(plane));
  }

  bool same_shape(const ImageT& other) const {
    return width() == other.width() && height() == other.height() &&
           channels() == other.channels();
  }

 private:
  std::vector<PlaneType> planes_;
};

using Image = ImageT<double>;

enum class DynamicRange { kLdr, kHdr };

// Equirectangular panorama: width must be twice the height.
struct Panorama {
  Image pixels;
  DynamicRange range = DynamicRange::kLdr;
};

inline void validate_panorama_dims(int width, int height) {
  if (width != 2 * height || height < 1)
    throw std::domain_error("panorama width must equal twice its height");
}

inline Plane to_gray(const Image& img) {
  if (img.channels() == 1) return img.plane(0);
  if (img.channels() != 3) throw std::domain_error("expected 1 or 3 channels");
  // Rec. 601 luma.
  return 0.299 * img.plane(0) + 0.587 * img.plane(1) + 0.114 * img.plane(2);
}

inline Image gray_to_image(Plane p) { return Image(std::move(p)); }

// Linear interpolation percentile, q in [0,100].
inline double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::domain_error("percentile of empty set");
  q = std::clamp(q, 0.0, 100.0);
  const double pos = q / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(lo), values.end());
  const double vlo = values[lo];
  if (hi == lo) return vlo;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(hi), values.end());
  return vlo + (values[hi] - vlo) * (pos - static_cast<double>(lo));
}

inline double percentile(const Plane& p, double q) {
  return percentile(std::vector<double>(p.data(), p.data() + p.size()), q);
}

// Box-filter resize; exact pixel-area overlap, suitable for downscaling targets.
template <typename Scalar>
PlaneT<Scalar> resize_area_plane(const PlaneT<Scalar>& src, int out_w, int out_h) {
  const int in_w = static_cast<int>(src.cols());
  const int in_h = static_cast<int>(src.rows());
  if (out_w < 1 || out_h < 1) throw std::domain_error("resize target must be positive");
  PlaneT<Scalar> dst(out_h, out_w);
  const double sx = static_cast<double>(in_w) / out_w;
  const double sy = static_cast<double>(in_h) / out_h;
  for (int oy = 0; oy < out_h; ++oy) {
    const double y0 = oy * sy, y1 = (oy + 1) * sy;
    const int iy0 = static_cast<int>(std::floor(y0));
    const int iy1 = std::min(in_h, static_cast<int>(std::ceil(y1)));
    for (int ox = 0; ox < out_w; ++ox) {
      const double x0 = ox * sx, x1 = (ox + 1) * sx;
      const int ix0 = static_cast<int>(std::floor(x0));
      const int ix1 = std::min(in_w, static_cast<int>(std::ceil(x1)));
      double acc = 0.0, area = 0.0;
      for (int iy = iy0; iy < iy1; ++iy) {
        const double hy = std::min<double>(iy + 1, y1) - std::max<double>(iy, y0);
        for (int ix = ix0; ix < ix1; ++ix) {
          const double wx = std::min<double>(ix + 1, x1) - std::max<double>(ix, x0);
          acc += hy * wx * static_cast<double>(src(iy, ix));
          area += hy * wx;
        }
      }
      dst(oy, ox) = static_cast<Scalar>(acc / area);
    }
  }
  return dst;
}

template <typename Scalar>
ImageT<Scalar> resize_area(const ImageT<Scalar>& src, int out_w, int out_h) {
  ImageT<Scalar> out;
  for (int c = 0; c < src.channels(); ++c)
    out.add_plane(resize_area_plane(src.plane(c), out_w, out_h));
  return out;
}

}  // namespace lumiprobe

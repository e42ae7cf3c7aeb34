#include "onnham/ref_filters.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace onnham {

Kernel Kernel::sobel_x() { return {{1, 0, -1, 2, 0, -2, 1, 0, -1}}; }
Kernel Kernel::sobel_y() { return {{1, 2, 1, 0, 0, 0, -1, -2, -1}}; }
Kernel Kernel::identity() { return {{0, 0, 0, 0, 1, 0, 0, 0, 0}}; }

void CannyParams::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("canny: sigma must be positive");
  if (!(low > 0.0 && low < high && high <= 1.0)) throw std::invalid_argument("canny: need 0 < low < high <= 1");
}

bool reaches(double magnitude, double threshold) { return magnitude >= threshold * (1.0 - 1e-9); }

RealGrid to_real(const GrayImage& image) {
  RealGrid g(image.width(), image.height());
  for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] = image.pixels()[i];
  return g;
}

RealGrid convolve3(const RealGrid& image, const Kernel& kernel) {
  if (image.width() < 3 || image.height() < 3) {
    throw std::invalid_argument("image too small: need at least 3x3, got " + std::to_string(image.width()) + "x" +
                                std::to_string(image.height()));
  }
  RealGrid out(image.width() - 2, image.height() - 2);
  for (int r = 0; r < out.height(); ++r) {
    for (int c = 0; c < out.width(); ++c) {
      double acc = 0.0;
      for (int dr = 0; dr < 3; ++dr) {
        for (int dc = 0; dc < 3; ++dc) acc += kernel.k[dr * 3 + dc] * image.at(r + dr, c + dc);
      }
      out.at(r, c) = acc;
    }
  }
  return out;
}

RealGrid convolve3(const GrayImage& image, const Kernel& kernel) { return convolve3(to_real(image), kernel); }

RealGrid sobel_magnitude(const RealGrid& image) {
  const RealGrid gx = convolve3(image, Kernel::sobel_x());
  const RealGrid gy = convolve3(image, Kernel::sobel_y());
  RealGrid mag(gx.width(), gx.height());
  for (std::size_t i = 0; i < mag.size(); ++i) mag.data()[i] = std::hypot(gx.data()[i], gy.data()[i]);
  return mag;
}

MarkMap sobel_edges(const GrayImage& image, double threshold_fraction, bool thin) {
  if (!(threshold_fraction > 0.0 && threshold_fraction <= 1.0)) {
    throw std::invalid_argument("sobel: threshold fraction must lie in (0, 1]");
  }
  const RealGrid real = to_real(image);
  const RealGrid gx = convolve3(real, Kernel::sobel_x());
  const RealGrid gy = convolve3(real, Kernel::sobel_y());
  const int w = gx.width();
  const int h = gx.height();
  RealGrid mag(w, h);
  for (std::size_t i = 0; i < mag.size(); ++i) mag.data()[i] = std::hypot(gx.data()[i], gy.data()[i]);
  auto mag_at = [&](int r, int c) { return r < 0 || r >= h || c < 0 || c >= w ? 0.0 : mag.at(r, c); };

  const double threshold = threshold_fraction * 4.0 * image.max_value();
  MarkMap marks(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double m = mag.at(r, c);
      if (m == 0.0 || !reaches(m, threshold)) continue;
      if (thin) {
        // Local maximum across the dominant gradient axis; ties go to the
        // first pixel of a plateau.
        const double ax = std::abs(gx.at(r, c));
        const double ay = std::abs(gy.at(r, c));
        const bool across_cols = ax >= ay && m > mag_at(r, c - 1) && m >= mag_at(r, c + 1);
        const bool across_rows = ay >= ax && m > mag_at(r - 1, c) && m >= mag_at(r + 1, c);
        if (!across_cols && !across_rows) continue;
      }
      marks.at(r, c) = 1;
    }
  }
  return marks;
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    taps[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += taps[i + radius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

namespace {

int mirror(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

}  // namespace

RealGrid gaussian_blur_real(const RealGrid& image, double sigma) {
  const auto taps = gaussian_kernel(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = image.width();
  const int h = image.height();

  RealGrid tmp(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += taps[k + radius] * image.at(r, mirror(c + k, w));
      tmp.at(r, c) = acc;
    }
  }
  RealGrid out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += taps[k + radius] * tmp.at(mirror(r + k, h), c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

GrayImage gaussian_blur(const GrayImage& image, double sigma) {
  const RealGrid blurred = gaussian_blur_real(to_real(image), sigma);
  GrayImage out(image.width(), image.height(), image.depth());
  for (int r = 0; r < out.height(); ++r) {
    for (int c = 0; c < out.width(); ++c) {
      out.set(r, c, std::clamp(static_cast<int>(std::lround(blurred.at(r, c))), 0, image.max_value()));
    }
  }
  return out;
}

double canny_full_scale(double sigma, int max_value) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  const int w = 4 * radius + 8;
  RealGrid step(w, 3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < w / 2; ++c) step.at(r, c) = max_value;
  }
  const RealGrid mag = sobel_magnitude(gaussian_blur_real(step, sigma));
  return *std::max_element(mag.data().begin(), mag.data().end());
}

MarkMap canny_edges(const GrayImage& image, const CannyParams& params) {
  params.validate();
  if (image.width() < 5 || image.height() < 5) {
    throw std::invalid_argument("image too small: canny needs at least 5x5, got " + std::to_string(image.width()) +
                                "x" + std::to_string(image.height()));
  }
  const RealGrid blurred = gaussian_blur_real(to_real(image), params.sigma);
  const RealGrid gx = convolve3(blurred, Kernel::sobel_x());
  const RealGrid gy = convolve3(blurred, Kernel::sobel_y());
  const int w = gx.width();
  const int h = gx.height();
  RealGrid mag(w, h);
  for (std::size_t i = 0; i < mag.size(); ++i) mag.data()[i] = std::hypot(gx.data()[i], gy.data()[i]);

  auto mag_at = [&](int r, int c) { return r < 0 || r >= h || c < 0 || c >= w ? 0.0 : mag.at(r, c); };

  // Non-maximum suppression. The strict/non-strict split breaks plateaus
  // (a symmetric step has two equal peaks) in favour of one pixel.
  RealGrid thin(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double m = mag.at(r, c);
      if (m == 0.0) continue;
      double angle = std::atan2(gy.at(r, c), gx.at(r, c)) * 180.0 / std::numbers::pi;
      if (angle < 0.0) angle += 180.0;
      int dr = 0;
      int dc = 0;
      if (angle < 22.5 || angle >= 157.5) {
        dc = 1;
      } else if (angle < 67.5) {
        dr = 1;  // brighter toward the top-left
        dc = 1;
      } else if (angle < 112.5) {
        dr = 1;
      } else {
        dr = -1;
        dc = 1;
      }
      if (m > mag_at(r - dr, c - dc) && m >= mag_at(r + dr, c + dc)) thin.at(r, c) = m;
    }
  }

  const double full_scale = canny_full_scale(params.sigma, image.max_value());
  const double high = params.high * full_scale;
  const double low = params.low * full_scale;
  MarkMap marks(w, h);
  std::deque<std::pair<int, int>> frontier;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (thin.at(r, c) > 0.0 && reaches(thin.at(r, c), high)) {
        marks.at(r, c) = 1;
        frontier.emplace_back(r, c);
      }
    }
  }
  while (!frontier.empty()) {
    const auto [r, c] = frontier.front();
    frontier.pop_front();
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int rr = r + dr;
        const int cc = c + dc;
        if (rr < 0 || rr >= h || cc < 0 || cc >= w || marks.at(rr, cc)) continue;
        if (thin.at(rr, cc) > 0.0 && reaches(thin.at(rr, cc), low)) {
          marks.at(rr, cc) = 1;
          frontier.emplace_back(rr, cc);
        }
      }
    }
  }
  return marks;
}

}  // namespace onnham

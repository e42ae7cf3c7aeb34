#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "onnham/ref_filters.hpp"

namespace onnham {
namespace {

GrayImage uniform(int w, int h, int level) { return GrayImage(w, h, Depth::Levels9, static_cast<std::uint8_t>(level)); }

GrayImage vertical_step(int w, int h, int boundary, int left = 8, int right = 0) {
  GrayImage img(w, h, Depth::Levels9, static_cast<std::uint8_t>(left));
  for (int r = 0; r < h; ++r) {
    for (int c = boundary; c < w; ++c) img.set(r, c, right);
  }
  return img;
}

GrayImage random_image(std::mt19937& rng, int w, int h) {
  std::uniform_int_distribution<int> level(0, 8);
  GrayImage img(w, h, Depth::Levels9);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) img.set(r, c, level(rng));
  }
  return img;
}

GrayImage transpose(const GrayImage& img) {
  GrayImage t(img.height(), img.width(), img.depth());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) t.set(c, r, img.at(r, c));
  }
  return t;
}

long count(const MarkMap& m) { return std::accumulate(m.data().begin(), m.data().end(), 0L); }

TEST(Convolve3, UniformImageZeroSumKernel) {
  const RealGrid g = convolve3(uniform(6, 5, 3), Kernel::sobel_x());
  EXPECT_EQ(g.width(), 4);
  EXPECT_EQ(g.height(), 3);
  for (double v : g.data()) EXPECT_EQ(v, 0.0);
}

TEST(Convolve3, UnitStepVerticalKernel) {
  GrayImage img(6, 4, Depth::Binary, 1);
  for (int r = 0; r < 4; ++r) {
    for (int c = 3; c < 6; ++c) img.set(r, c, 0);
  }
  const RealGrid g = convolve3(img, Kernel::sobel_x());
  for (int r = 0; r < g.height(); ++r) {
    EXPECT_EQ(g.at(r, 0), 0.0);
    EXPECT_EQ(std::abs(g.at(r, 1)), 4.0);
    EXPECT_EQ(std::abs(g.at(r, 2)), 4.0);
    EXPECT_EQ(g.at(r, 3), 0.0);
  }
}

TEST(Convolve3, IdentityCrops) {
  std::mt19937 rng(1);
  const GrayImage img = random_image(rng, 7, 6);
  const RealGrid g = convolve3(img, Kernel::identity());
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) EXPECT_EQ(g.at(r, c), img.at(r + 1, c + 1));
  }
  EXPECT_THROW(convolve3(uniform(2, 3, 0), Kernel::identity()), std::invalid_argument);
}

TEST(Convolve3, KernelOrientationTopRowFirst) {
  // Bright top row only: sobel_y's positive row 0 must see it.
  GrayImage img(3, 3, Depth::Levels9, 0);
  for (int c = 0; c < 3; ++c) img.set(0, c, 8);
  EXPECT_EQ(convolve3(img, Kernel::sobel_y()).at(0, 0), 32.0);
}

TEST(SobelEdges, UniformHasNoEdges) { EXPECT_EQ(count(sobel_edges(uniform(10, 10, 5))), 0); }

TEST(SobelEdges, BoundaryGivesOneColumn) {
  const MarkMap m = sobel_edges(vertical_step(12, 8, 6));
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) EXPECT_EQ(m.at(r, c), c == 4 ? 1 : 0) << r << "," << c;
  }
  const MarkMap raw = sobel_edges(vertical_step(12, 8, 6), 0.5, false);
  EXPECT_EQ(count(raw), 2 * raw.height());
}

TEST(SobelEdges, StepContrastThreshold) {
  // Straight step magnitude is 4 * contrast; half of full scale is 16.
  for (int level = 0; level <= 8; ++level) {
    const long marks = count(sobel_edges(vertical_step(10, 6, 5, 8, level)));
    EXPECT_EQ(marks > 0, level <= 4) << level;
  }
}

TEST(SobelEdges, ThresholdMonotone) {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    const GrayImage img = random_image(rng, 12, 12);
    MarkMap prev = sobel_edges(img, 0.05);
    for (double th = 0.1; th <= 1.0; th += 0.05) {
      const MarkMap cur = sobel_edges(img, th);
      for (std::size_t i = 0; i < cur.size(); ++i) EXPECT_LE(cur.data()[i], prev.data()[i]);
      prev = cur;
    }
  }
  EXPECT_THROW(sobel_edges(uniform(5, 5, 0), 0.0), std::invalid_argument);
  EXPECT_THROW(sobel_edges(uniform(5, 5, 0), 1.5), std::invalid_argument);
}

TEST(SobelMagnitude, TransposeSwapsGradients) {
  std::mt19937 rng(6);
  for (int t = 0; t < 20; ++t) {
    const GrayImage img = random_image(rng, 9, 7);
    const RealGrid gx = convolve3(img, Kernel::sobel_x());
    const RealGrid gy = convolve3(img, Kernel::sobel_y());
    const GrayImage tr = transpose(img);
    const RealGrid tgx = convolve3(tr, Kernel::sobel_x());
    const RealGrid tgy = convolve3(tr, Kernel::sobel_y());
    for (int r = 0; r < gx.height(); ++r) {
      for (int c = 0; c < gx.width(); ++c) {
        EXPECT_EQ(std::abs(gx.at(r, c)), std::abs(tgy.at(c, r)));
        EXPECT_EQ(std::abs(gy.at(r, c)), std::abs(tgx.at(c, r)));
      }
    }
  }
}

TEST(GaussianBlur, KernelNormalized) {
  for (double sigma : {0.5, 1.0, 1.4, 2.7}) {
    const auto k = gaussian_kernel(sigma);
    EXPECT_EQ(k.size(), 2 * static_cast<std::size_t>(std::ceil(3 * sigma)) + 1);
    EXPECT_NEAR(std::accumulate(k.begin(), k.end(), 0.0), 1.0, 1e-9);
  }
  EXPECT_THROW(gaussian_kernel(0.0), std::invalid_argument);
}

TEST(GaussianBlur, UniformUnchanged) {
  const GrayImage img = uniform(11, 7, 6);
  EXPECT_EQ(gaussian_blur(img, 1.4), img);
  const RealGrid r = gaussian_blur_real(to_real(img), 2.0);
  for (double v : r.data()) EXPECT_NEAR(v, 6.0, 1e-12);
}

TEST(GaussianBlur, ImpulseIsSymmetricBell) {
  RealGrid img(15, 15);
  img.at(7, 7) = 100.0;
  const RealGrid b = gaussian_blur_real(img, 1.4);
  for (int d = 1; d <= 6; ++d) {
    EXPECT_NEAR(b.at(7, 7 - d), b.at(7, 7 + d), 1e-12);
    EXPECT_NEAR(b.at(7 - d, 7), b.at(7 + d, 7), 1e-12);
    EXPECT_NEAR(b.at(7, 7 + d), b.at(7 + d, 7), 1e-12);
    EXPECT_LT(b.at(7, 7 + d), b.at(7, 7 + d - 1));
  }
}

TEST(GaussianBlur, TinyImagesMirrorSafely) {
  const RealGrid b = gaussian_blur_real(RealGrid(1, 2, 3.0), 2.0);
  for (double v : b.data()) EXPECT_NEAR(v, 3.0, 1e-12);
}

TEST(CannyEdges, UniformHasNoEdges) { EXPECT_EQ(count(canny_edges(uniform(12, 12, 3))), 0); }

TEST(CannyEdges, StepGivesSinglePixelLine) {
  const MarkMap m = canny_edges(vertical_step(20, 12, 10));
  for (int r = 0; r < m.height(); ++r) {
    int in_row = 0;
    for (int c = 0; c < m.width(); ++c) in_row += m.at(r, c);
    EXPECT_EQ(in_row, 1) << r;
    EXPECT_TRUE(m.at(r, 8) || m.at(r, 9)) << r;
  }
}

TEST(CannyEdges, ParamsValidated) {
  EXPECT_THROW(canny_edges(uniform(4, 10, 0)), std::invalid_argument);
  EXPECT_THROW(canny_edges(uniform(10, 10, 0), {1.4, 0.3, 0.2}), std::invalid_argument);
  EXPECT_THROW(canny_edges(uniform(10, 10, 0), {0.0, 0.1, 0.2}), std::invalid_argument);
  EXPECT_THROW(canny_edges(uniform(10, 10, 0), {1.0, 0.1, 1.2}), std::invalid_argument);
}

TEST(CannyEdges, SubsetOfLowThresholdGradientOnBlurredImage) {
  std::mt19937 rng(21);
  const CannyParams p;
  for (int t = 0; t < 10; ++t) {
    const GrayImage img = random_image(rng, 16, 14);
    const MarkMap canny = canny_edges(img, p);
    const RealGrid mag = sobel_magnitude(gaussian_blur_real(to_real(img), p.sigma));
    const double low = p.low * canny_full_scale(p.sigma, img.max_value());
    for (std::size_t i = 0; i < canny.size(); ++i) {
      if (canny.data()[i]) EXPECT_TRUE(reaches(mag.data()[i], low));
    }
  }
}

TEST(CannyFullScale, ScalesWithContrast) {
  const double fs = canny_full_scale(1.4, 8);
  EXPECT_GT(fs, 0.0);
  EXPECT_LT(fs, 32.0);
  EXPECT_NEAR(canny_full_scale(1.4, 255) / fs, 255.0 / 8.0, 1e-9);
}

TEST(Reaches, RelativeMargin) {
  EXPECT_TRUE(reaches(1.0, 1.0));
  EXPECT_TRUE(reaches(1.0 - 1e-12, 1.0));
  EXPECT_FALSE(reaches(0.999, 1.0));
}

}  // namespace
}  // namespace onnham

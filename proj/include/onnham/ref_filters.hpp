#pragma once

// Reference Sobel and Canny detectors. All gradient grids are valid-mode
// (W-2)x(H-2) so they line up window-for-window with ONN edge maps.

#include <array>
#include <vector>

#include "onnham/grid.hpp"
#include "onnham/image.hpp"

namespace onnham {

struct Kernel {
  std::array<double, 9> k{};  // row-major; row 0 meets the window's top row

  static Kernel sobel_x();  // responds to vertical boundaries
  static Kernel sobel_y();  // responds to horizontal boundaries
  static Kernel identity();
};

struct CannyParams {
  double sigma = 1.4;
  double low = 0.10;   // fraction of full-scale gradient magnitude
  double high = 0.25;  // fraction of full-scale gradient magnitude

  void validate() const;
};

/// Valid-mode 3x3 correlation.
RealGrid convolve3(const RealGrid& image, const Kernel& kernel);
RealGrid convolve3(const GrayImage& image, const Kernel& kernel);

RealGrid to_real(const GrayImage& image);

/// sqrt(Gx^2 + Gy^2), valid-mode.
RealGrid sobel_magnitude(const RealGrid& image);

/// Marks windows whose Sobel magnitude reaches threshold_fraction of the
/// magnitude of a maximal-contrast step (4 * max pixel value). With `thin`,
/// only local maxima across the dominant gradient axis survive, so a step
/// between two pixel columns yields one marked column instead of two.
MarkMap sobel_edges(const GrayImage& image, double threshold_fraction = 0.5, bool thin = true);

/// Normalized taps over [-ceil(3 sigma), +ceil(3 sigma)].
std::vector<double> gaussian_kernel(double sigma);

/// Separable gaussian with mirrored borders (... c b a | a b c ...).
RealGrid gaussian_blur_real(const RealGrid& image, double sigma);
/// Same, rounded back to the input depth.
GrayImage gaussian_blur(const GrayImage& image, double sigma);

/// Peak Sobel magnitude of a blurred step from 0 to max_value; the reference
/// for Canny hysteresis fractions.
double canny_full_scale(double sigma, int max_value);

/// Gaussian blur, Sobel gradients, non-maximum suppression over 4 direction
/// bins, then hysteresis. Output is (W-2)x(H-2).
MarkMap canny_edges(const GrayImage& image, const CannyParams& params = {});

/// Threshold test shared by the detectors: values within a 1e-9 relative
/// margin below the threshold still count as reaching it, so exact-ratio
/// boundaries are not decided by floating-point rounding.
bool reaches(double magnitude, double threshold);

}  // namespace onnham

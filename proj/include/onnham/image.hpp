#pragma once

// Gray-level images, PGM and IDX3 I/O, quantization and evaluation maps.

#include <cstdint>
#include <filesystem>
#include <vector>

#include "onnham/grid.hpp"

namespace onnham {

/// Gray256: 0..255. Levels9: 0..8 (oscillator phase levels). Binary: {0, 1}.
enum class Depth { Gray256, Levels9, Binary };

int max_value(Depth depth);

class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, Depth depth, std::uint8_t fill = 0);
  /// Validates that every pixel fits the depth.
  GrayImage(int width, int height, Depth depth, std::vector<std::uint8_t> pixels);

  [[nodiscard]] int width() const { return pixels_.width(); }
  [[nodiscard]] int height() const { return pixels_.height(); }
  [[nodiscard]] Depth depth() const { return depth_; }
  [[nodiscard]] int max_value() const { return onnham::max_value(depth_); }

  [[nodiscard]] std::uint8_t at(int row, int col) const { return pixels_.at(row, col); }
  /// Throws if value exceeds the depth bound.
  void set(int row, int col, int value);

  [[nodiscard]] const std::vector<std::uint8_t>& pixels() const { return pixels_.data(); }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  Depth depth_ = Depth::Gray256;
  Grid<std::uint8_t> pixels_;
};

/// Reads P2 or P5. maxval 1 loads as Binary, 8 as Levels9, 255 as Gray256;
/// any other maxval <= 255 is rescaled to Gray256.
GrayImage load_pgm(const std::filesystem::path& path);
/// Writes binary P5 with maxval equal to the image depth bound.
void save_pgm(const GrayImage& image, const std::filesystem::path& path);

/// IDX3 unsigned-byte image file (magic 0x00000803), big-endian header.
std::vector<GrayImage> load_idx_images(const std::filesystem::path& path);
/// Writes Gray256 images of identical size as an IDX3 file.
void save_idx_images(const std::vector<GrayImage>& images, const std::filesystem::path& path);

/// Gray256 -> Binary: pixel >= threshold becomes white (1).
GrayImage binarize(const GrayImage& image, int threshold = 128);
/// Gray256 -> Levels9: round(pixel * 8 / 255), halves rounded up.
GrayImage quantize9(const GrayImage& image);
/// Levels9 -> Gray256: round(level * 255 / 8).
GrayImage expand9(const GrayImage& image);
/// Any depth -> Levels9 (Binary maps to {0, 8}).
GrayImage to_levels9(const GrayImage& image);
/// Any depth -> Gray256 (Binary maps to {0, 255}).
GrayImage to_gray256(const GrayImage& image);

/// Photometric negative within the same depth (p -> max - p).
GrayImage invert(const GrayImage& image);

struct EvalMapSpec {
  int square_size = 24;
  int gap = 16;
  int rows = 3;
  int cols = 3;
  int background_level = 8;
  std::vector<int> square_levels{0, 1, 2, 3, 4, 5, 6, 7, 8};

  [[nodiscard]] int width() const { return cols * square_size + (cols + 1) * gap; }
  [[nodiscard]] int height() const { return rows * square_size + (rows + 1) * gap; }
};

/// Pixel rectangle occupied by square k (row-major placement).
struct SquareRect {
  int top = 0;
  int left = 0;
  int size = 0;
};
SquareRect square_rect(const EvalMapSpec& spec, int k);

/// Levels9 image: background with gray squares placed row-major.
GrayImage gen_eval_map(const EvalMapSpec& spec);

}  // namespace onnham

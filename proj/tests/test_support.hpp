#pragma once

#include <array>
#include <filesystem>
#include <random>
#include <string>

#include "onnham/edge_pipeline.hpp"

namespace onnham::testing {

// Input-to-output weight column worked out by hand from the two Sobel
// training pairs: w_i = h_i * (+1) + v_i * (-1).
inline constexpr std::array<double, 9> kHandColumn = {0, 2, 2, -2, 0, 2, -2, -2, 0};

/// Net input drive on output "a" from a patch, using the hand-derived column.
inline double drive(const Patch& patch) {
  double s = 0.0;
  for (int i = 0; i < 9; ++i) s += kHandColumn[i] * (patch[i] / 4.0 - 1.0);
  return s;
}

/// Classification predicted by the closed-form analysis of the dynamics.
inline EdgeClass closed_form_class(const Patch& patch) {
  const double s = drive(patch);
  if (s >= 2.0) return EdgeClass::EdgeA;
  if (s <= -2.0) return EdgeClass::EdgeB;
  return EdgeClass::NoEdge;
}

inline Patch random_patch(std::mt19937& rng) {
  std::uniform_int_distribution<int> level(0, 8);
  Patch p{};
  for (int& v : p) v = level(rng);
  return p;
}

inline Patch uniform_patch(int level) {
  Patch p{};
  p.fill(level);
  return p;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("onnham-test-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace onnham::testing

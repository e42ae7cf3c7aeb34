#pragma once

// Detector comparisons (gray-level profiles, double detection, precision /
// recall) and the sequential-scan timing model.

#include <array>
#include <optional>
#include <string_view>

#include "onnham/edge_pipeline.hpp"
#include "onnham/ref_filters.hpp"

namespace onnham {

enum class DetectorKind { Hnn, Phase, Sobel, Canny };

std::string_view to_string(DetectorKind kind);
/// Parses "hnn", "phase", "sobel", "canny".
std::optional<DetectorKind> parse_detector(std::string_view name);

/// Any of the four detectors behind one interface producing window marks.
struct Detector {
  DetectorKind kind = DetectorKind::Hnn;
  Backend backend;  // Hnn / Phase
  double sobel_threshold = 0.5;
  CannyParams canny;
  ScanOptions scan;

  static Detector of(DetectorKind kind);

  /// (W-2)x(H-2) marks; 1 = edge.
  [[nodiscard]] MarkMap marks(const GrayImage& image) const;
};

struct DetectionProfile {
  std::array<bool, 9> detected{};  // index = square gray level
};

/// Square of each level on a uniform background, detector run on each; a
/// level counts as detected when any window straddling the square border is
/// marked.
DetectionProfile gray_detection_profile(const Detector& detector, int background_level = 8);

/// Marked candidate windows per marked reference window.
double double_detection_ratio(const MarkMap& candidate, const MarkMap& reference);

struct ComparisonReport {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
  long true_positive = 0;
  long false_positive = 0;
  long false_negative = 0;
  std::optional<ClassCounts> classes;  // set when the candidate is an EdgeMap
};

/// Precision is 1 for an empty candidate, recall is 1 for an empty reference.
ComparisonReport compare_maps(const MarkMap& candidate, const MarkMap& reference);
ComparisonReport compare_maps(const EdgeMap& candidate, const MarkMap& reference);

/// Per-window network cost; defaults are the worst case of the digital
/// design at 166 MHz.
struct TimingModel {
  double t_init = 240e-9;     // s
  double t_compute = 2e-6;    // s
  int parallel_onns = 1;

  void validate() const;
};

/// (w-2)(h-2)(t_init + t_compute) / parallel_onns, in seconds.
double estimate_processing_time(int width, int height, const TimingModel& model = {});

/// Largest square side n with estimate_processing_time(n, n) <= 1/fps; 0 when
/// not even a 3x3 image fits.
int max_realtime_size(double fps = 30.0, const TimingModel& model = {});

}  // namespace onnham

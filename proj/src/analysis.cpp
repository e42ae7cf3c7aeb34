#include "onnham/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace onnham {

std::string_view to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::Hnn: return "hnn";
    case DetectorKind::Phase: return "phase";
    case DetectorKind::Sobel: return "sobel";
    case DetectorKind::Canny: return "canny";
  }
  return "?";
}

std::optional<DetectorKind> parse_detector(std::string_view name) {
  if (name == "hnn") return DetectorKind::Hnn;
  if (name == "phase") return DetectorKind::Phase;
  if (name == "sobel") return DetectorKind::Sobel;
  if (name == "canny") return DetectorKind::Canny;
  return std::nullopt;
}

Detector Detector::of(DetectorKind kind) {
  Detector d;
  d.kind = kind;
  if (kind == DetectorKind::Phase) d.backend = Backend::phase();
  return d;
}

MarkMap Detector::marks(const GrayImage& image) const {
  switch (kind) {
    case DetectorKind::Hnn:
    case DetectorKind::Phase: return edge_marks(scan_image(image, backend, nullptr, scan));
    case DetectorKind::Sobel: return sobel_edges(image, sobel_threshold);
    case DetectorKind::Canny: return canny_edges(image, canny);
  }
  return {};
}

DetectionProfile gray_detection_profile(const Detector& detector, int background_level) {
  DetectionProfile profile;
  for (int level = 0; level <= 8; ++level) {
    EvalMapSpec spec;
    spec.rows = 1;
    spec.cols = 1;
    spec.background_level = background_level;
    spec.square_levels = {level};
    const GrayImage image = gen_eval_map(spec);
    const SquareRect sq = square_rect(spec, 0);
    auto inside = [&](int r, int c) {
      return r >= sq.top && r < sq.top + sq.size && c >= sq.left && c < sq.left + sq.size;
    };

    const MarkMap marks = detector.marks(image);
    bool detected = false;
    for (int r = 0; r < marks.height() && !detected; ++r) {
      for (int c = 0; c < marks.width() && !detected; ++c) {
        if (!marks.at(r, c)) continue;
        int in = 0;
        for (int dr = 0; dr < 3; ++dr) {
          for (int dc = 0; dc < 3; ++dc) in += inside(r + dr, c + dc) ? 1 : 0;
        }
        detected = in > 0 && in < 9;
      }
    }
    profile.detected[level] = detected;
  }
  return profile;
}

namespace {

long count_marks(const MarkMap& m) {
  long n = 0;
  for (auto v : m.data()) n += v ? 1 : 0;
  return n;
}

void require_same_shape(const MarkMap& a, const MarkMap& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("map dimensions differ: " + std::to_string(a.width()) + "x" +
                                std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                                std::to_string(b.height()));
  }
}

}  // namespace

double double_detection_ratio(const MarkMap& candidate, const MarkMap& reference) {
  require_same_shape(candidate, reference);
  const long ref = count_marks(reference);
  if (ref == 0) throw std::invalid_argument("double_detection_ratio: reference map has no edges");
  return static_cast<double>(count_marks(candidate)) / static_cast<double>(ref);
}

ComparisonReport compare_maps(const MarkMap& candidate, const MarkMap& reference) {
  require_same_shape(candidate, reference);
  ComparisonReport rep;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    const bool c = candidate.data()[i] != 0;
    const bool r = reference.data()[i] != 0;
    if (c && r) ++rep.true_positive;
    if (c && !r) ++rep.false_positive;
    if (!c && r) ++rep.false_negative;
  }
  const long marked = rep.true_positive + rep.false_positive;
  const long relevant = rep.true_positive + rep.false_negative;
  rep.precision = marked == 0 ? 1.0 : static_cast<double>(rep.true_positive) / static_cast<double>(marked);
  rep.recall = relevant == 0 ? 1.0 : static_cast<double>(rep.true_positive) / static_cast<double>(relevant);
  const double denom = rep.precision + rep.recall;
  rep.f1 = denom == 0.0 ? 0.0 : 2.0 * rep.precision * rep.recall / denom;
  return rep;
}

ComparisonReport compare_maps(const EdgeMap& candidate, const MarkMap& reference) {
  ComparisonReport rep = compare_maps(edge_marks(candidate), reference);
  rep.classes = count_classes(candidate);
  return rep;
}

void TimingModel::validate() const {
  if (!(t_init > 0.0) || !(t_compute > 0.0)) throw std::invalid_argument("timing: per-window times must be positive");
  if (parallel_onns < 1) throw std::invalid_argument("timing: parallel_onns must be at least 1");
}

double estimate_processing_time(int width, int height, const TimingModel& model) {
  model.validate();
  if (width < 3 || height < 3) throw std::invalid_argument("timing: image must be at least 3x3");
  const double windows = static_cast<double>(width - 2) * static_cast<double>(height - 2);
  return windows * (model.t_init + model.t_compute) / model.parallel_onns;
}

int max_realtime_size(double fps, const TimingModel& model) {
  model.validate();
  if (!(fps > 0.0)) throw std::invalid_argument("timing: fps must be positive");
  const double budget = 1.0 / fps;
  if (estimate_processing_time(3, 3, model) > budget) return 0;
  // Closed-form guess, then settle on the exact boundary of the estimator.
  const double per_window = (model.t_init + model.t_compute) / model.parallel_onns;
  long n = 2 + static_cast<long>(std::floor(std::sqrt(budget / per_window)));
  n = std::clamp(n, 3L, 1L << 30);
  while (n > 3 && estimate_processing_time(static_cast<int>(n), static_cast<int>(n), model) > budget) --n;
  while (estimate_processing_time(static_cast<int>(n + 1), static_cast<int>(n + 1), model) <= budget) ++n;
  return static_cast<int>(n);
}

}  // namespace onnham

#pragma once

// Full-image edge detection with the 11-neuron hetero-associative network:
// 3x3 windows at stride 1 without padding, one network run per window.

#include <array>
#include <cstdint>
#include <string_view>
#include <variant>

#include "onnham/grid.hpp"
#include "onnham/ham.hpp"
#include "onnham/hnn.hpp"
#include "onnham/image.hpp"
#include "onnham/phase_onn.hpp"

namespace onnham {

/// EdgeA: outputs settled on (+1,+1). EdgeB: (-1,-1). NoEdge: any other
/// settled or cycling output. Unstable: the run never settled; it renders as
/// NoEdge but is kept apart for reporting.
enum class EdgeClass : std::uint8_t { EdgeA, EdgeB, NoEdge, Unstable };

std::string_view to_string(EdgeClass c);
inline bool is_edge(EdgeClass c) { return c == EdgeClass::EdgeA || c == EdgeClass::EdgeB; }
/// Class as drawn in output images: Unstable collapses to NoEdge.
inline EdgeClass rendered(EdgeClass c) { return c == EdgeClass::Unstable ? EdgeClass::NoEdge : c; }

/// Window class at (r, c) describes image pixels [r, r+2] x [c, c+2].
using EdgeMap = Grid<EdgeClass>;

/// 3x3 gray levels 0..8, row-major.
using Patch = std::array<int, 9>;

enum class BackendKind { HnnEmulator, PhaseOnn };

struct Backend {
  BackendKind kind = BackendKind::HnnEmulator;
  WeightMatrix weights = build_edge_ham();
  int max_sweeps = kDefaultMaxSweeps;  // HnnEmulator
  OnnConfig onn;                       // PhaseOnn

  static Backend hnn() { return Backend{}; }
  static Backend phase(OnnConfig config = {}) {
    Backend b;
    b.kind = BackendKind::PhaseOnn;
    b.onn = config;
    return b;
  }
};

std::string_view to_string(BackendKind kind);

using NetworkState = std::variant<BipolarState, PhaseState>;

/// Inputs row-major (HNN value level/4 - 1, phase stage 8 - level), outputs
/// set to the neutral pair (a = -1 / stage 8, b = +1 / stage 0).
NetworkState encode_patch(const Patch& patch, const Backend& backend);

EdgeClass decode_class(const HnnOutcome& outcome);
EdgeClass decode_class(const PhaseOutcome& outcome);

EdgeClass detect_patch(const Patch& patch, const Backend& backend);

/// Black/white lookup table. Index bit i is set iff patch pixel i (row-major)
/// is white.
class BwLut {
 public:
  static constexpr int kEntries = 512;

  explicit BwLut(const std::array<EdgeClass, kEntries>& entries) : entries_(entries) {}

  [[nodiscard]] EdgeClass operator[](int code) const { return entries_.at(static_cast<std::size_t>(code)); }
  [[nodiscard]] const std::array<EdgeClass, kEntries>& entries() const { return entries_; }

  /// Code of a binary patch (levels 0 or 8 only).
  static int code_of(const Patch& patch);
  static Patch patch_of(int code);

  friend bool operator==(const BwLut&, const BwLut&) = default;

 private:
  std::array<EdgeClass, kEntries> entries_;
};

BwLut build_bw_lut(const Backend& backend);

struct ScanOptions {
  /// 0 = ONNHAM_THREADS or hardware concurrency.
  int threads = 0;
};

/// Worker count from ONNHAM_THREADS, falling back to hardware concurrency.
int default_thread_count();

/// Classifies every 3x3 window. Non-Levels9 images are converted first. With
/// a LUT the image must be binary (levels 0 and 8 only).
EdgeMap scan_image(const GrayImage& image, const Backend& backend, const BwLut* lut = nullptr,
                   ScanOptions options = {});

struct ClassCounts {
  long edge_a = 0;
  long edge_b = 0;
  long no_edge = 0;
  long unstable = 0;

  [[nodiscard]] long edges() const { return edge_a + edge_b; }
};

ClassCounts count_classes(const EdgeMap& map);

struct RenderStyle {
  int edge_value = 0;
  int background_value = 255;
  bool unstable_as_edge = false;
};

/// Gray256 image of the map's size.
GrayImage render_edge_map(const EdgeMap& map, const RenderStyle& style = {});

/// 1 where the window is an edge (EdgeA or EdgeB).
MarkMap edge_marks(const EdgeMap& map);

}  // namespace onnham

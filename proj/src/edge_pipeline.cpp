#include "onnham/edge_pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace onnham {

std::string_view to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::EdgeA: return "EdgeA";
    case EdgeClass::EdgeB: return "EdgeB";
    case EdgeClass::NoEdge: return "NoEdge";
    case EdgeClass::Unstable: return "Unstable";
  }
  return "?";
}

std::string_view to_string(BackendKind kind) {
  return kind == BackendKind::HnnEmulator ? "hnn" : "phase";
}

namespace {

void check_patch(const Patch& patch) {
  for (int level : patch) {
    if (level < 0 || level > 8) throw std::invalid_argument("patch level out of range [0, 8]: " + std::to_string(level));
  }
}

}  // namespace

NetworkState encode_patch(const Patch& patch, const Backend& backend) {
  check_patch(patch);
  if (backend.kind == BackendKind::HnnEmulator) {
    std::vector<double> s(edge::kNeurons);
    for (std::size_t i = 0; i < edge::kInputs; ++i) s[i] = patch[i] / 4.0 - 1.0;
    s[edge::kOutA] = -1.0;
    s[edge::kOutB] = +1.0;
    return BipolarState(std::move(s));
  }
  std::vector<int> stages(edge::kNeurons);
  for (std::size_t i = 0; i < edge::kInputs; ++i) stages[i] = level_to_stage(patch[i]);
  stages[edge::kOutA] = kMaxStage;
  stages[edge::kOutB] = 0;
  return PhaseState(std::move(stages));
}

EdgeClass decode_class(const HnnOutcome& outcome) {
  switch (outcome.kind) {
    case HnnKind::NonConvergent: return EdgeClass::Unstable;
    case HnnKind::Cycle2: return EdgeClass::NoEdge;
    case HnnKind::FixedPoint: break;
  }
  const double a = outcome.final_state[edge::kOutA];
  const double b = outcome.final_state[edge::kOutB];
  if (a == 1.0 && b == 1.0) return EdgeClass::EdgeA;
  if (a == -1.0 && b == -1.0) return EdgeClass::EdgeB;
  return EdgeClass::NoEdge;
}

EdgeClass decode_class(const PhaseOutcome& outcome) {
  if (outcome.kind == PhaseKind::Unstable) return EdgeClass::Unstable;
  const int a = outcome.final_stages[edge::kOutA];
  const int b = outcome.final_stages[edge::kOutB];
  if (a <= 1 && b <= 1) return EdgeClass::EdgeA;
  if (a >= 7 && b >= 7) return EdgeClass::EdgeB;
  return EdgeClass::NoEdge;
}

EdgeClass detect_patch(const Patch& patch, const Backend& backend) {
  const NetworkState init = encode_patch(patch, backend);
  if (backend.kind == BackendKind::HnnEmulator) {
    return decode_class(hnn_run(std::get<BipolarState>(init), backend.weights, backend.max_sweeps));
  }
  return decode_class(onn_run(std::get<PhaseState>(init), backend.weights, backend.onn));
}

int BwLut::code_of(const Patch& patch) {
  int code = 0;
  for (std::size_t i = 0; i < patch.size(); ++i) {
    if (patch[i] == 8) {
      code |= 1 << i;
    } else if (patch[i] != 0) {
      throw std::invalid_argument("LUT lookup requires a black/white patch (levels 0 and 8)");
    }
  }
  return code;
}

Patch BwLut::patch_of(int code) {
  if (code < 0 || code >= kEntries) throw std::out_of_range("LUT code out of range");
  Patch p{};
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = (code >> i) & 1 ? 8 : 0;
  return p;
}

BwLut build_bw_lut(const Backend& backend) {
  std::array<EdgeClass, BwLut::kEntries> entries{};
  for (int code = 0; code < BwLut::kEntries; ++code) entries[code] = detect_patch(BwLut::patch_of(code), backend);
  return BwLut(entries);
}

int default_thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("ONNHAM_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) return static_cast<int>(std::min<long>(cap, hw));
  }
  return hw;
}

EdgeMap scan_image(const GrayImage& source, const Backend& backend, const BwLut* lut, ScanOptions options) {
  if (source.width() < 3 || source.height() < 3) {
    throw std::invalid_argument("image too small: need at least 3x3, got " + std::to_string(source.width()) + "x" +
                                std::to_string(source.height()));
  }
  const GrayImage image = to_levels9(source);
  if (lut) {
    const auto& px = image.pixels();
    if (std::any_of(px.begin(), px.end(), [](std::uint8_t p) { return p != 0 && p != 8; })) {
      throw std::invalid_argument("LUT scan requires a black/white image");
    }
  }

  EdgeMap map(image.width() - 2, image.height() - 2, EdgeClass::NoEdge);
  auto scan_rows = [&](int row_begin, int row_end) {
    for (int r = row_begin; r < row_end; ++r) {
      for (int c = 0; c < map.width(); ++c) {
        Patch patch{};
        for (int dr = 0; dr < 3; ++dr) {
          for (int dc = 0; dc < 3; ++dc) patch[dr * 3 + dc] = image.at(r + dr, c + dc);
        }
        map.at(r, c) = lut ? (*lut)[BwLut::code_of(patch)] : detect_patch(patch, backend);
      }
    }
  };

  int threads = options.threads > 0 ? options.threads : default_thread_count();
  threads = std::clamp(threads, 1, map.height());
  // A LUT scan is a table lookup per window; threading it is not worth a spawn.
  if (threads == 1 || lut) {
    scan_rows(0, map.height());
    return map;
  }
  std::vector<std::jthread> workers;
  const int chunk = (map.height() + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int begin = t * chunk;
    const int end = std::min(map.height(), begin + chunk);
    if (begin >= end) break;
    workers.emplace_back(scan_rows, begin, end);
  }
  workers.clear();
  return map;
}

ClassCounts count_classes(const EdgeMap& map) {
  ClassCounts counts;
  for (EdgeClass c : map.data()) {
    switch (c) {
      case EdgeClass::EdgeA: ++counts.edge_a; break;
      case EdgeClass::EdgeB: ++counts.edge_b; break;
      case EdgeClass::NoEdge: ++counts.no_edge; break;
      case EdgeClass::Unstable: ++counts.unstable; break;
    }
  }
  return counts;
}

GrayImage render_edge_map(const EdgeMap& map, const RenderStyle& style) {
  GrayImage out(map.width(), map.height(), Depth::Gray256);
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      const EdgeClass cls = map.at(r, c);
      const bool edge = is_edge(cls) || (style.unstable_as_edge && cls == EdgeClass::Unstable);
      out.set(r, c, edge ? style.edge_value : style.background_value);
    }
  }
  return out;
}

MarkMap edge_marks(const EdgeMap& map) {
  MarkMap marks(map.width(), map.height());
  for (std::size_t i = 0; i < map.size(); ++i) marks.data()[i] = is_edge(map.data()[i]) ? 1 : 0;
  return marks;
}

}  // namespace onnham

#pragma once

// Behavioral model of the digital phase-domain ONN. Each neuron is a digital
// oscillator whose phase is quantized into 9 stages spanning 0..180 degrees;
// one oscillator period lasts 16 phase clocks and F_osc = F_sys / 64.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "onnham/ham.hpp"

namespace onnham {

inline constexpr int kPhaseStages = 9;
inline constexpr int kMaxStage = kPhaseStages - 1;

/// Per-neuron phase stage; stage p encodes p * 22.5 degrees.
class PhaseState {
 public:
  PhaseState() = default;
  explicit PhaseState(std::vector<int> stages);

  [[nodiscard]] std::size_t size() const { return stages_.size(); }
  [[nodiscard]] int operator[](std::size_t i) const { return stages_[i]; }
  [[nodiscard]] std::span<const int> stages() const { return stages_; }

  friend bool operator==(const PhaseState&, const PhaseState&) = default;

 private:
  std::vector<int> stages_;
};

struct OnnConfig {
  static constexpr int kClocksPerPeriod = 16;
  static constexpr int kPeriodDivisor = 16 * 4;

  double f_sys = 166e6;  // Hz
  double gain = 4.0;
  int max_cycles = 10;
  int stable_cycles = 2;
  int init_clocks = 40;
  // Input-layer oscillators keep their initialization phase unless set.
  bool evolve_inputs = false;

  [[nodiscard]] double f_osc() const { return f_sys / kPeriodDivisor; }
  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

enum class PhaseKind { Stable, Unstable };

std::string_view to_string(PhaseKind kind);

struct PhaseOutcome {
  PhaseKind kind = PhaseKind::Unstable;
  PhaseState final_stages;
  int cycles = 0;
};

struct OnnTiming {
  double init_ns = 0.0;
  double compute_ns = 0.0;
};

/// White (8) sits at stage 0, black (0) at stage 8.
int level_to_stage(int level);

/// Linear map stage 0 -> +1, 4 -> 0, 8 -> -1.
double stage_to_value(int stage);

/// Maps a normalized field u in [-1, 1] to the nearest stage, ties away from zero.
int value_to_stage(double u);

/// One oscillation cycle: every updated neuron moves to the stage of its
/// gain-scaled, row-normalized field. Neurons with no couplings are held.
PhaseState onn_cycle(const PhaseState& state, const WeightMatrix& weights, const OnnConfig& config);

/// Runs cycles until the last `stable_cycles` post-cycle states agree, or
/// declares Unstable after `max_cycles`. If `trace` is given, the initial
/// state and every post-cycle state are appended to it.
PhaseOutcome onn_run(const PhaseState& init, const WeightMatrix& weights, const OnnConfig& config,
                     std::vector<PhaseState>* trace = nullptr);

OnnTiming onn_timing(const PhaseOutcome& outcome, const OnnConfig& config);

}  // namespace onnham

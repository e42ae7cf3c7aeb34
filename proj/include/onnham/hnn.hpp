#pragma once

// Hopfield-style emulator: synchronous sign dynamics where a neuron whose
// local field is exactly zero keeps its previous value.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "onnham/ham.hpp"

namespace onnham {

/// Neuron activations in [-1, +1]. Initial states may hold in-between values
/// (gray pixels); every update writes -1 or +1.
class BipolarState {
 public:
  BipolarState() = default;
  explicit BipolarState(std::vector<double> s);

  [[nodiscard]] std::size_t size() const { return s_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return s_[i]; }
  [[nodiscard]] std::span<const double> values() const { return s_; }

  friend bool operator==(const BipolarState&, const BipolarState&) = default;

 private:
  std::vector<double> s_;
};

enum class HnnKind { FixedPoint, Cycle2, NonConvergent };

std::string_view to_string(HnnKind kind);

struct HnnOutcome {
  HnnKind kind = HnnKind::NonConvergent;
  BipolarState final_state;
  int sweeps = 0;
};

inline constexpr int kDefaultMaxSweeps = 20;

/// One synchronous update of every neuron from the pre-sweep state.
BipolarState hnn_sweep(const BipolarState& state, const WeightMatrix& weights);

/// Iterates sweeps until a fixed point, a 2-cycle, or max_sweeps (>= 2).
HnnOutcome hnn_run(const BipolarState& init, const WeightMatrix& weights, int max_sweeps = kDefaultMaxSweeps);

}  // namespace onnham

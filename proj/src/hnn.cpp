#include "onnham/hnn.hpp"

#include <cmath>
#include <stdexcept>

namespace onnham {

BipolarState::BipolarState(std::vector<double> s) : s_(std::move(s)) {
  for (double v : s_) {
    if (!(v >= -1.0 && v <= 1.0)) throw std::invalid_argument("bipolar state entries must lie in [-1, +1]");
  }
}

std::string_view to_string(HnnKind kind) {
  switch (kind) {
    case HnnKind::FixedPoint: return "FixedPoint";
    case HnnKind::Cycle2: return "Cycle2";
    case HnnKind::NonConvergent: return "NonConvergent";
  }
  return "?";
}

BipolarState hnn_sweep(const BipolarState& state, const WeightMatrix& weights) {
  const std::size_t n = weights.n();
  if (state.size() != n) throw std::invalid_argument("hnn_sweep: state size does not match weight matrix");
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = weights.row(i);
    double field = 0.0;
    for (std::size_t j = 0; j < n; ++j) field += row[j] * state[j];
    if (field > 0.0) {
      next[i] = 1.0;
    } else if (field < 0.0) {
      next[i] = -1.0;
    } else {
      next[i] = state[i];
    }
  }
  return BipolarState(std::move(next));
}

HnnOutcome hnn_run(const BipolarState& init, const WeightMatrix& weights, int max_sweeps) {
  if (max_sweeps < 2) throw std::invalid_argument("hnn_run: max_sweeps must be at least 2");
  if (init.size() != weights.n()) throw std::invalid_argument("hnn_run: state size does not match weight matrix");

  BipolarState before_prev;  // state(t-2)
  BipolarState prev = init;  // state(t-1)
  for (int t = 1; t <= max_sweeps; ++t) {
    BipolarState cur = hnn_sweep(prev, weights);
    if (cur == prev) return {HnnKind::FixedPoint, std::move(cur), t};
    if (t >= 2 && cur == before_prev) return {HnnKind::Cycle2, std::move(cur), t};
    before_prev = std::move(prev);
    prev = std::move(cur);
  }
  return {HnnKind::NonConvergent, std::move(prev), max_sweeps};
}

}  // namespace onnham

#include "onnham/phase_onn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace onnham {

namespace {

void check_stage(int stage) {
  if (stage < 0 || stage > kMaxStage) {
    throw std::invalid_argument("phase stage out of range [0, 8]: " + std::to_string(stage));
  }
}

}  // namespace

PhaseState::PhaseState(std::vector<int> stages) : stages_(std::move(stages)) {
  for (int s : stages_) check_stage(s);
}

void OnnConfig::validate() const {
  if (!(f_sys > 0.0)) throw std::invalid_argument("f_sys must be positive");
  if (!(gain > 0.0) || !std::isfinite(gain)) throw std::invalid_argument("gain must be a positive finite number");
  if (stable_cycles < 2) throw std::invalid_argument("stable_cycles must be at least 2");
  if (max_cycles < stable_cycles) throw std::invalid_argument("max_cycles must be >= stable_cycles");
  if (init_clocks < 0) throw std::invalid_argument("init_clocks must be non-negative");
}

std::string_view to_string(PhaseKind kind) {
  return kind == PhaseKind::Stable ? "Stable" : "Unstable";
}

int level_to_stage(int level) {
  if (level < 0 || level > kMaxStage) {
    throw std::invalid_argument("gray level out of range [0, 8]: " + std::to_string(level));
  }
  return kMaxStage - level;
}

double stage_to_value(int stage) {
  check_stage(stage);
  return 1.0 - stage / 4.0;
}

int value_to_stage(double u) {
  u = std::clamp(u, -1.0, 1.0);
  return static_cast<int>(std::lround(4.0 * (1.0 - u)));
}

PhaseState onn_cycle(const PhaseState& state, const WeightMatrix& weights, const OnnConfig& config) {
  const std::size_t n = weights.n();
  if (state.size() != n) throw std::invalid_argument("onn_cycle: state size does not match weight matrix");

  std::vector<double> value(n);
  for (std::size_t j = 0; j < n; ++j) value[j] = stage_to_value(state[j]);

  std::vector<int> next(state.stages().begin(), state.stages().end());
  const std::size_t first = config.evolve_inputs ? 0 : weights.n_in();
  for (std::size_t i = first; i < n; ++i) {
    const auto row = weights.row(i);
    double field = 0.0;
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      field += row[j] * value[j];
      row_sum += std::abs(row[j]);
    }
    if (row_sum == 0.0) continue;
    next[i] = value_to_stage(config.gain * field / row_sum);
  }
  return PhaseState(std::move(next));
}

PhaseOutcome onn_run(const PhaseState& init, const WeightMatrix& weights, const OnnConfig& config,
                     std::vector<PhaseState>* trace) {
  config.validate();
  if (init.size() != weights.n()) throw std::invalid_argument("onn_run: state size does not match weight matrix");
  if (trace) trace->push_back(init);

  PhaseState cur = init;
  int run = 0;  // consecutive identical post-cycle states ending at `cur`
  for (int cycle = 1; cycle <= config.max_cycles; ++cycle) {
    PhaseState next = onn_cycle(cur, weights, config);
    run = (cycle > 1 && next == cur) ? run + 1 : 1;
    cur = std::move(next);
    if (trace) trace->push_back(cur);
    if (run >= config.stable_cycles) return {PhaseKind::Stable, std::move(cur), cycle};
  }
  return {PhaseKind::Unstable, std::move(cur), config.max_cycles};
}

OnnTiming onn_timing(const PhaseOutcome& outcome, const OnnConfig& config) {
  if (!(config.f_sys > 0.0)) throw std::invalid_argument("f_sys must be positive");
  const double period_ns = 1e9 / config.f_sys;
  return {config.init_clocks * period_ns, outcome.cycles * OnnConfig::kPeriodDivisor * period_ns};
}

}  // namespace onnham

#include "onnham/ham.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace onnham {

Pattern::Pattern(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("pattern must not be empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("pattern values must be finite");
  }
}

PatternPair::PatternPair(Pattern in, Pattern out) : input(std::move(in)), output(std::move(out)) {
  for (double v : output.values()) {
    if (v != 1.0 && v != -1.0) {
      throw std::invalid_argument("output pattern entries must be -1 or +1, got " + std::to_string(v));
    }
  }
}

WeightMatrix::WeightMatrix(std::size_t n, std::size_t n_in) : n_(n), n_in_(n_in), w_(n * n, 0.0) {
  if (n == 0) throw std::invalid_argument("weight matrix needs at least one neuron");
  if (n_in > n) throw std::invalid_argument("n_in exceeds neuron count");
}

WeightMatrix::WeightMatrix(std::size_t n_in, const std::vector<std::vector<double>>& rows)
    : WeightMatrix(rows.size(), n_in) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) throw std::invalid_argument("weight matrix rows must be square");
    for (std::size_t j = 0; j < n_; ++j) w_[i * n_ + j] = rows[i][j];
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (w_[i * n_ + i] != 0.0) throw std::invalid_argument("weight matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (w_[i * n_ + j] != w_[j * n_ + i]) throw std::invalid_argument("weight matrix must be symmetric");
    }
  }
}

std::vector<std::vector<double>> WeightMatrix::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(w_.begin() + i * n_, w_.begin() + (i + 1) * n_);
  return out;
}

void WeightMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) throw std::out_of_range("weight index out of range");
  if (i == j) throw std::invalid_argument("diagonal weights are fixed at zero");
  w_[i * n_ + j] = value;
  w_[j * n_ + i] = value;
}

WeightMatrix hebbian_aam(std::span<const Pattern> patterns) {
  if (patterns.empty()) throw std::invalid_argument("hebbian_aam: no patterns");
  const std::size_t n = patterns.front().size();
  for (const auto& p : patterns) {
    if (p.size() != n) throw std::invalid_argument("hebbian_aam: patterns differ in length");
  }
  WeightMatrix w(n, n);
  const double k = static_cast<double>(patterns.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sum = 0.0;
      for (const auto& p : patterns) sum += p[i] * p[j];
      w.set(i, j, sum / k);
    }
  }
  return w;
}

PatternPair expand_output_pair(const PatternPair& pair) {
  if (pair.output.size() != 1) throw std::invalid_argument("expand_output_pair: output must be scalar");
  const double y = pair.output[0];
  return PatternPair(pair.input, Pattern({y, y}));
}

WeightMatrix hebbian_ham(std::span<const PatternPair> pairs) {
  if (pairs.empty()) throw std::invalid_argument("hebbian_ham: no pattern pairs");
  const std::size_t n_in = pairs.front().input.size();
  const std::size_t n_out = pairs.front().output.size();
  for (const auto& p : pairs) {
    if (p.input.size() != n_in || p.output.size() != n_out) {
      throw std::invalid_argument("hebbian_ham: pattern pair dimensions differ");
    }
  }
  const std::size_t n = n_in + n_out;
  std::vector<std::vector<double>> joined;
  joined.reserve(pairs.size());
  for (const auto& p : pairs) {
    std::vector<double> v(p.input.values().begin(), p.input.values().end());
    v.insert(v.end(), p.output.values().begin(), p.output.values().end());
    joined.push_back(std::move(v));
  }

  WeightMatrix w(n, n_in);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j < n_in) continue;  // input-input couplings stay zero
      double sum = 0.0;
      for (const auto& v : joined) sum += v[i] * v[j];
      w.set(i, j, sum);
    }
  }
  return w;
}

namespace edge {

std::vector<PatternPair> training_pairs() {
  const Pattern horizontal(std::vector<double>(std::begin(kHorizontalKernel), std::end(kHorizontalKernel)));
  const Pattern vertical(std::vector<double>(std::begin(kVerticalKernel), std::end(kVerticalKernel)));
  return {
      expand_output_pair(PatternPair(horizontal, Pattern({+1.0}))),
      expand_output_pair(PatternPair(vertical, Pattern({-1.0}))),
  };
}

}  // namespace edge

WeightMatrix build_edge_ham() {
  const auto pairs = edge::training_pairs();
  return hebbian_ham(pairs);
}

}  // namespace onnham

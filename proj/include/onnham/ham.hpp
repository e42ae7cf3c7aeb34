#pragma once

// Hebbian learning for auto- and hetero-associative memories, plus the
// 11-neuron edge-detection network (9 input pixels, 2 duplicated outputs).

#include <cstddef>
#include <span>
#include <vector>

namespace onnham {

/// Activation vector for one stored memory. Values are usually bipolar but
/// kernel-valued patterns (entries like +-2) are allowed.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<double> values);

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] std::span<const double> values() const { return values_; }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<double> values_;
};

/// An (input, output) association. Output entries must be exactly -1 or +1.
struct PatternPair {
  PatternPair(Pattern in, Pattern out);

  Pattern input;
  Pattern output;
};

/// Symmetric, zero-diagonal coupling matrix. Neurons [0, n_in) form the
/// input layer; the rest are outputs.
class WeightMatrix {
 public:
  WeightMatrix(std::size_t n, std::size_t n_in);
  /// Builds from explicit rows; validates symmetry and the zero diagonal.
  WeightMatrix(std::size_t n_in, const std::vector<std::vector<double>>& rows);

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t n_in() const { return n_in_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return std::span<const double>(w_).subspan(i * n_, n_);
  }
  [[nodiscard]] std::vector<std::vector<double>> rows() const;

  /// Sets w[i][j] and w[j][i]; i == j is rejected.
  void set(std::size_t i, std::size_t j, double value);

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t n_in_ = 0;
  std::vector<double> w_;
};

/// w_ij = (1/k) sum_k X_i^k X_j^k, zero diagonal. n_in equals the pattern length.
WeightMatrix hebbian_aam(std::span<const Pattern> patterns);

/// Duplicates a scalar bipolar output onto two neurons.
PatternPair expand_output_pair(const PatternPair& pair);

/// Unnormalized Hebbian sum over concatenated (input, output) vectors with the
/// input-input block forced to zero.
WeightMatrix hebbian_ham(std::span<const PatternPair> pairs);

namespace edge {

inline constexpr std::size_t kInputs = 9;
inline constexpr std::size_t kNeurons = 11;
inline constexpr std::size_t kOutA = 9;
inline constexpr std::size_t kOutB = 10;

/// Sobel kernel responding to horizontal edges, row-major.
inline constexpr double kHorizontalKernel[kInputs] = {1, 2, 1, 0, 0, 0, -1, -2, -1};
/// Sobel kernel responding to vertical edges, row-major.
inline constexpr double kVerticalKernel[kInputs] = {1, 0, -1, 2, 0, -2, 1, 0, -1};

/// The two training pairs: horizontal kernel -> (+1,+1), vertical -> (-1,-1).
std::vector<PatternPair> training_pairs();

}  // namespace edge

/// 11-neuron weight matrix for the edge detector.
WeightMatrix build_edge_ham();

}  // namespace onnham

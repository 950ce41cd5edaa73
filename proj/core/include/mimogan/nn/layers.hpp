#pragma once

#include <cstdint>
#include <string_view>

#include "mimogan/common/types.hpp"

namespace mimogan::nn {

enum class LayerKind : std::uint8_t { dense = 1, leaky_relu = 2, dropout = 3, tanh = 4 };

std::string_view to_string(LayerKind kind) noexcept;

// One entry of a feed-forward chain. Only the field relevant to `kind` is used.
struct LayerSpec {
  LayerKind kind = LayerKind::dense;
  Eigen::Index width = 0;   // dense output width
  double slope = 0.2;       // leaky_relu negative-axis slope
  double drop_rate = 0.1;   // dropout probability

  static LayerSpec dense(Eigen::Index width) { return {LayerKind::dense, width, 0.2, 0.1}; }
  static LayerSpec leaky_relu(double slope = 0.2) { return {LayerKind::leaky_relu, 0, slope, 0.1}; }
  static LayerSpec dropout(double rate = 0.1) { return {LayerKind::dropout, 0, 0.2, rate}; }
  static LayerSpec tanh() { return {LayerKind::tanh, 0, 0.2, 0.1}; }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// out[i,j] = sum_k x[i,k] * W[k,j] + b[j]. Throws DimensionError on mismatch.
RealMatrix dense_forward(const RealMatrix& x, const RealMatrix& weight, const RealVector& bias);

}  // namespace mimogan::nn

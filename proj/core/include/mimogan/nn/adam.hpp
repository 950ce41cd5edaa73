#pragma once

#include <cstdint>
#include <vector>

#include "mimogan/nn/network.hpp"

namespace mimogan::nn {

struct AdamConfig {
  double learning_rate = 0.0002;
  double beta1 = 0.5;
  double beta2 = 0.99;
  double epsilon = 1e-8;
  double l2 = 1e-4;  // added to the gradient as l2 * param before the moment update
};

// Optimizer state for one network: moment accumulators shaped like its
// dense parameters.
struct AdamState {
  AdamConfig config;
  std::uint64_t step_count = 0;
  std::vector<RealMatrix> weight_m, weight_v;
  std::vector<RealVector> bias_m, bias_v;

  static AdamState for_net(const NeuralNet& net, AdamConfig config = {});
};

// Bias-corrected Adam step with L2 gradient augmentation; clears the
// network's gradients afterwards.
void adam_step(NeuralNet& net, AdamState& state);

}  // namespace mimogan::nn

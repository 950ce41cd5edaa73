#pragma once

#include <optional>
#include <vector>

#include "mimogan/common/rng.hpp"
#include "mimogan/common/types.hpp"
#include "mimogan/nn/layers.hpp"

namespace mimogan::nn {

enum class Mode { train, eval };

// Whether backward should accumulate parameter gradients or only return
// the gradient with respect to the input.
enum class GradTarget { params_and_input, input_only };

// Activations recorded by a train-mode forward pass. A network may be run
// several times within one loss (cycle terms), each run producing its own
// trace.
struct ForwardTrace {
  std::vector<RealMatrix> inputs;  // inputs[i] is the input of layer i
  std::vector<RealMatrix> masks;   // scaled keep-mask for dropout layers, empty otherwise
  RealMatrix output;
};

struct DenseParams {
  RealMatrix weight;       // [in x out]
  RealVector bias;         // [out]
  RealMatrix weight_grad;  // same shape as weight
  RealVector bias_grad;    // same shape as bias
};

// Ordered stack of dense / activation / dropout layers with manual backprop.
// Single-writer: training mutates gradients and must be serialized.
class NeuralNet {
 public:
  NeuralNet() = default;

  // Builds the chain and draws Glorot-uniform weights (biases zero).
  NeuralNet(Eigen::Index input_width, std::vector<LayerSpec> layers, Rng& init_rng);

  // Builds the chain with all-zero parameters.
  static NeuralNet zeros(Eigen::Index input_width, std::vector<LayerSpec> layers);

  Eigen::Index input_width() const noexcept { return input_width_; }
  Eigen::Index output_width() const noexcept { return output_width_; }
  const std::vector<LayerSpec>& layers() const noexcept { return specs_; }

  // Dense parameters in chain order (one entry per dense layer).
  std::vector<DenseParams>& params() noexcept { return params_; }
  const std::vector<DenseParams>& params() const noexcept { return params_; }
  std::size_t parameter_count() const noexcept;

  // Applies the chain. Dropout is active only in train mode (inverted
  // dropout, so eval needs no rescale) and then requires `rng`. A train-mode
  // call caches its activations for the stateful `backward` overload.
  RealMatrix forward(const RealMatrix& x, Mode mode, Rng* rng = nullptr);

  // Eval-mode forward on an immutable network.
  RealMatrix predict(const RealMatrix& x) const;

  // Train-mode forward returning its own trace; does not touch the cache.
  ForwardTrace forward_traced(const RealMatrix& x, Rng& rng) const;

  // Backprop through the cached train-mode forward. Accumulates onto the
  // existing gradients and returns d(loss)/d(input).
  RealMatrix backward(const RealMatrix& upstream);

  // Backprop through an explicit trace.
  RealMatrix backward(const ForwardTrace& trace, const RealMatrix& upstream,
                      GradTarget target = GradTarget::params_and_input);

  void zero_grad();

 private:
  ForwardTrace run(const RealMatrix& x, Mode mode, Rng* rng, bool keep_trace) const;

  Eigen::Index input_width_ = 0;
  Eigen::Index output_width_ = 0;
  std::vector<LayerSpec> specs_;
  std::vector<int> dense_slot_;  // layer index -> params_ index, -1 for non-dense
  std::vector<DenseParams> params_;
  std::optional<ForwardTrace> cache_;
};

}  // namespace mimogan::nn

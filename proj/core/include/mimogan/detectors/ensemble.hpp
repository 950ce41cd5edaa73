#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "mimogan/detectors/preprocess.hpp"
#include "mimogan/nn/adam.hpp"
#include "mimogan/nn/network.hpp"

namespace mimogan::detectors {

enum class DetectorKind { cyclegan, cyclednn, dnn };

std::string_view to_string(DetectorKind kind) noexcept;

// Weights of the four l1 terms in the generator objective:
//   alpha |G_s2y(s) - y|, beta |G_y2s(y) - s|,
//   gamma |G_y2s(G_s2y(s)) - s|, delta |G_s2y(G_y2s(y)) - y|.
struct LossWeights {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double delta = 1.0;
};

// Widths of the generator and discriminator chains. `features` is the
// flattened signal width (2 x streams); discriminators take 2 x features.
struct NetworkShape {
  Eigen::Index features = 16;
  Eigen::Index gen_hidden1 = 256;
  Eigen::Index gen_hidden2 = 512;
  Eigen::Index disc_hidden1 = 512;
  Eigen::Index disc_hidden2 = 256;
  double slope = 0.2;
  double drop_rate = 0.1;

  // Halved hidden widths used by the desk-scale profile.
  static NetworkShape smoke(Eigen::Index features = 16) { return {features, 128, 256, 256, 128, 0.2, 0.1}; }
};

// features -> h1 -> h2 -> features with tanh output.
std::vector<nn::LayerSpec> generator_layers(const NetworkShape& shape);
// 2*features -> h1 -> h2 -> 1, no output activation.
std::vector<nn::LayerSpec> discriminator_layers(const NetworkShape& shape);

// The four networks of one detector plus their optimizers and the
// per-block preprocessing state. DNN and CycleDNN detectors carry the same
// members and simply leave the unused ones untouched.
struct DetectorEnsemble {
  DetectorKind kind = DetectorKind::cyclegan;
  NetworkShape shape;
  nn::NeuralNet g_s2y, g_y2s, d_s2y, d_y2s;
  nn::AdamState opt_g_s2y, opt_g_y2s, opt_d_s2y, opt_d_y2s;
  LossWeights pilot_weights;
  LossWeights data_weights;
  PreprocScales scales;
  RealMatrix pseudo_labels;  // normalized s~_D from the latest refresh
  double best_val_ber = 1.0;

  static DetectorEnsemble create(DetectorKind kind, const NetworkShape& shape, const nn::AdamConfig& adam,
                                 const LossWeights& pilot, const LossWeights& data, Rng& init_rng);

  bool adversarial() const noexcept { return kind == DetectorKind::cyclegan; }
  bool bidirectional() const noexcept { return kind != DetectorKind::dnn; }
};

// Ensemble checkpoint: "MGEN" magic, u32 version, u8 kind, 8 f64 loss
// weights (pilot alpha..delta, data alpha..delta), u64 feature count,
// s-scales and y-scales as f64, then four network records in the order
// g_s2y, g_y2s, d_s2y, d_y2s. Optimizer state is not stored.
void save_ensemble(const DetectorEnsemble& ens, std::ostream& out);
DetectorEnsemble load_ensemble(std::istream& in, const nn::AdamConfig& adam = {});

}  // namespace mimogan::detectors

#pragma once

#include "mimogan/detectors/ensemble.hpp"

namespace mimogan::detectors {

// Row-wise concatenation [a, b] used to feed pairs to a discriminator.
RealMatrix concat_pairs(const RealMatrix& a, const RealMatrix& b);

// Least-squares discriminator loss on discriminator outputs:
//   mean_i (D_real_i - 1)^2 + (D_fake_i + 1)^2
// `inverted` swaps the +1/-1 targets.
double d_loss_value(const RealMatrix& d_real, const RealMatrix& d_fake, bool inverted = false);

// Network outputs entering the generator objective for one batch.
// Empty matrices mean "term absent".
struct GeneratorOutputs {
  RealMatrix d_fwd;    // D_s2y([s, G_s2y(s)])
  RealMatrix d_bwd;    // D_y2s([y, G_y2s(y)])
  RealMatrix fwd;      // G_s2y(s)
  RealMatrix bwd;      // G_y2s(y)
  RealMatrix cyc_s;    // G_y2s(G_s2y(s))
  RealMatrix cyc_y;    // G_s2y(G_y2s(y))
};

// mean_i D_fwd^2 + D_bwd^2 + alpha|fwd - y|_1 + beta|bwd - s|_1
//      + gamma|cyc_s - s|_1 + delta|cyc_y - y|_1
double g_loss_value(const GeneratorOutputs& out, const RealMatrix& s, const RealMatrix& y, const LossWeights& w);

// Eval-mode evaluations on a frozen ensemble.
double d_loss(const nn::NeuralNet& d, const RealMatrix& real_pairs, const RealMatrix& fake_pairs,
              bool inverted = false);
double g_loss(const DetectorEnsemble& ens, const RealMatrix& s, const RealMatrix& y, const LossWeights& w);

// One discriminator objective evaluated in train mode; accumulates the
// discriminator's parameter gradients and returns the loss. `x` is the
// generator input, `target` the paired real output.
double accumulate_discriminator_gradients(nn::NeuralNet& disc, const nn::NeuralNet& gen, const RealMatrix& x,
                                          const RealMatrix& target, bool inverted, Rng& rng);

// Generator objective for the ensemble's kind, evaluated in train mode;
// accumulates gradients into the generators (never the discriminators)
// and returns the loss. l1 subgradient at zero is 0.
double accumulate_generator_gradients(DetectorEnsemble& ens, const RealMatrix& s, const RealMatrix& y,
                                      const LossWeights& w, Rng& rng);

}  // namespace mimogan::detectors

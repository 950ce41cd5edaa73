#pragma once

#include <optional>

#include "mimogan/detectors/training.hpp"
#include "mimogan/link/transmitter.hpp"

namespace mimogan::detectors {

struct Detection {
  ComplexFrame symbols;  // [streams x D]
  Bits bits;             // 2 * streams * D
};

// normalize -> G_y2s (eval) -> denormalize -> unflatten -> hard decisions.
Detection detect(const DetectorEnsemble& ens, const ComplexFrame& y_payload);

// Fits the block's normalization: transmit maxima over the pilots, receive
// maxima over every received sample of the block (pilots and payload). When
// previous pilots are given they enter both maxima, so every vector fed to
// the networks stays within [-1, 1] before augmentation.
void fit_block_scales(DetectorEnsemble& ens, const link::TransmissionBlock& block, ScaleMode mode,
                      const PilotSet* previous = nullptr);

PilotSet pilot_set(const link::TransmissionBlock& block);

struct BlockOutcome {
  Bits bits;                    // final detection
  Bits supervised_bits;         // detection right after the pilot phase
  TrainReport supervised;
  std::optional<TrainReport> semi;
  PilotSet pilots;              // this block's pilots, to pass on as "previous"
};

// Full per-block procedure for a neural detector, warm-starting from the
// ensemble's current weights: scale fitting, pilot-period training, then
// (CycleGAN and CycleDNN) data-period training, then detection.
BlockOutcome run_neural_block(DetectorEnsemble& ens, const link::TransmissionBlock& block, const PilotSet* previous,
                              const TrainConfig& cfg, Rng& rng);

}  // namespace mimogan::detectors

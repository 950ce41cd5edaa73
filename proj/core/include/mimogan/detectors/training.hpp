#pragma once

#include <functional>
#include <string_view>

#include "mimogan/detectors/ensemble.hpp"

namespace mimogan::detectors {

struct TrainConfig {
  int max_epochs = 5000;
  int patience = 100;
  int batch_size = 128;
  double label_invert_prob = 0.05;
  int pilot_augment = 10;
  int payload_augment = 5;
  double augment_noise_std = 0.05;
  ScaleMode scale_mode = ScaleMode::per_domain;
};

enum class StopReason { patience, epoch_cap };
std::string_view to_string(StopReason r) noexcept;

struct TrainReport {
  int epochs_run = 0;
  double best_val_ber = 1.0;
  StopReason stopped_by = StopReason::patience;
  bool used_previous_pilots = false;
  int pseudo_label_refreshes = 0;
};

// Raw (flattened, not normalized) pilot pairs of one block.
struct PilotSet {
  RealMatrix s;
  RealMatrix y;
};

// Normalized, augmented datasets carried from the supervised phase into the
// semi-supervised phase of the same block.
struct TrainingSession {
  PairSet train;
  PairSet val;
  bool used_previous_pilots = false;
};

// Validation BER of G_y2s: hard decisions on denormalized outputs.
double validation_ber(const DetectorEnsemble& ens, const PairSet& val);

// One pass over `train` in shuffled batches: both discriminators first
// (adversarial kinds), then the generators jointly.
void train_epoch(DetectorEnsemble& ens, const PairSet& train, const LossWeights& w, const TrainConfig& cfg,
                 Rng& rng);

// Epoch loop with early stopping on validation BER. The starting ensemble
// is evaluated first and counts as the initial best; training stops after
// `patience` epochs without strict improvement or at the epoch cap, and the
// ensemble is restored to the best checkpoint. `on_improve` runs after each
// strict improvement and may modify `train`.
TrainReport fit(DetectorEnsemble& ens, PairSet& train, const PairSet& val, const LossWeights& w,
                const TrainConfig& cfg, Rng& rng,
                const std::function<void(DetectorEnsemble&, PairSet&)>& on_improve = {});

// Pilot-period training. Splits the current pilots 3:1 into train and
// validation sets, augments both, and trains two candidates from the same
// starting weights and random stream: one on the current pilots, one on
// current plus previous pilots (when given). The candidate with strictly
// lower validation BER is kept. Requires ens.scales to be fitted; throws
// InsufficientDataError for fewer than 4 pilots.
TrainReport train_supervised(DetectorEnsemble& ens, TrainingSession& session, const PilotSet& current,
                             const PilotSet* previous, const TrainConfig& cfg, Rng& rng);

// s~_D = G_y2s(y_D) in eval mode, in the normalized domain.
RealMatrix pseudo_label(const DetectorEnsemble& ens, const RealMatrix& y_payload_norm);

// Data-period training on the pilot training set plus pseudo-labeled,
// augmented payload. Pseudo-labels are refreshed on every strict validation
// improvement. Throws StateError if the session has no validation set.
TrainReport train_semisupervised(DetectorEnsemble& ens, const TrainingSession& session,
                                 const RealMatrix& y_payload_norm, const TrainConfig& cfg, Rng& rng);

}  // namespace mimogan::detectors

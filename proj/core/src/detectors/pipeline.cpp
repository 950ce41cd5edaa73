#include "mimogan/detectors/pipeline.hpp"

#include "mimogan/link/qpsk.hpp"

namespace mimogan::detectors {

Detection detect(const DetectorEnsemble& ens, const ComplexFrame& y_payload) {
  Detection out;
  const RealMatrix y = normalize(flatten(y_payload), ens.scales.y_max);
  out.symbols = unflatten(denormalize(ens.g_y2s.predict(y), ens.scales.s_max));
  out.bits = link::qpsk_hard_bits(out.symbols);
  return out;
}

namespace {
RealMatrix stack(const RealMatrix& a, const RealMatrix& b) {
  if (b.rows() == 0) return a;
  RealMatrix out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}
}  // namespace

void fit_block_scales(DetectorEnsemble& ens, const link::TransmissionBlock& block, ScaleMode mode,
                      const PilotSet* previous) {
  RealMatrix s = flatten(block.s_pilot);
  RealMatrix y = stack(flatten(block.y_pilot), flatten(block.y_payload));
  if (previous != nullptr) {
    s = stack(s, previous->s);
    y = stack(y, previous->y);
  }
  ens.scales = fit_scales(s, y, mode);
}

PilotSet pilot_set(const link::TransmissionBlock& block) {
  return {flatten(block.s_pilot), flatten(block.y_pilot)};
}

BlockOutcome run_neural_block(DetectorEnsemble& ens, const link::TransmissionBlock& block, const PilotSet* previous,
                              const TrainConfig& cfg, Rng& rng) {
  BlockOutcome out;
  out.pilots = pilot_set(block);
  fit_block_scales(ens, block, cfg.scale_mode, previous);

  TrainingSession session;
  out.supervised = train_supervised(ens, session, out.pilots, previous, cfg, rng);
  out.supervised_bits = detect(ens, block.y_payload).bits;

  if (ens.bidirectional()) {
    const RealMatrix y_payload = normalize(flatten(block.y_payload), ens.scales.y_max);
    out.semi = train_semisupervised(ens, session, y_payload, cfg, rng);
    out.bits = detect(ens, block.y_payload).bits;
  } else {
    out.bits = out.supervised_bits;
  }
  return out;
}

}  // namespace mimogan::detectors

#pragma once

#include <functional>
#include <vector>

#include "mimogan/detectors/pipeline.hpp"
#include "mimogan/harness/config.hpp"
#include "mimogan/harness/metrics.hpp"

namespace mimogan::harness {

// Seeds are derived from (master, Eb/N0 index, block index, detector, purpose)
// with derive_seed, so every detector sees the same channel, bits and noise
// and results do not depend on scheduling.
std::uint64_t point_seed(const ExperimentConfig& cfg, std::size_t ebn0_index, Stream purpose);
std::uint64_t block_seed(const ExperimentConfig& cfg, std::size_t ebn0_index, std::size_t block, Stream purpose);
std::uint64_t detector_seed(const ExperimentConfig& cfg, std::size_t ebn0_index, std::size_t block, DetectorId id,
                            Stream purpose);

std::vector<channel::ChannelRealization> make_channels(const ExperimentConfig& cfg, std::size_t ebn0_index);

// Random QPSK frame through precoding, optional PA, channel and noise.
link::TransmissionBlock make_block(const ExperimentConfig& cfg, std::size_t ebn0_index, std::size_t block,
                                   const channel::ChannelRealization& ch);

detectors::DetectorEnsemble make_ensemble(const ExperimentConfig& cfg, DetectorId id, std::size_t ebn0_index);
detectors::DetectorKind neural_kind(DetectorId id);

using RecordSink = std::function<void(const MetricsRecord&)>;

// Called after every neural (block, detector) with the full training
// outcome, e.g. to inspect detections made right after the pilot phase.
using BlockObserver =
    std::function<void(const MetricsRecord&, const link::TransmissionBlock&, const detectors::BlockOutcome&)>;

// All blocks of one Eb/N0 point, detectors warm-started across blocks.
std::vector<MetricsRecord> run_point(const ExperimentConfig& cfg, std::size_t ebn0_index, const RecordSink& sink = {},
                                     const BlockObserver& observer = {});

// Every Eb/N0 point (up to cfg.threads at a time); records are ordered by
// Eb/N0 index, then block, then detector list order. `sink`
// and `observer` calls are serialized.
std::vector<MetricsRecord> run_experiment(const ExperimentConfig& cfg, const RecordSink& sink = {},
                                          const BlockObserver& observer = {});

}  // namespace mimogan::harness

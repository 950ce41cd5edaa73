#include "mimogan/harness/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "mimogan/common/errors.hpp"
#include "mimogan/detectors/lmmse.hpp"
#include "mimogan/link/precoder.hpp"
#include "mimogan/link/qpsk.hpp"

namespace mimogan::harness {

std::uint64_t point_seed(const ExperimentConfig& cfg, std::size_t ebn0_index, Stream purpose) {
  return derive_seed(cfg.seed, {ebn0_index, tag(purpose)});
}

std::uint64_t block_seed(const ExperimentConfig& cfg, std::size_t ebn0_index, std::size_t block, Stream purpose) {
  return derive_seed(cfg.seed, {ebn0_index, block, tag(purpose)});
}

std::uint64_t detector_seed(const ExperimentConfig& cfg, std::size_t ebn0_index, std::size_t block, DetectorId id,
                            Stream purpose) {
  return derive_seed(cfg.seed, {ebn0_index, block, static_cast<std::uint64_t>(id) + 1, tag(purpose)});
}

std::vector<channel::ChannelRealization> make_channels(const ExperimentConfig& cfg, std::size_t ebn0_index) {
  channel::FadingConfig fc;
  fc.rx = cfg.rx_antennas;
  fc.tx = cfg.tx_antennas;
  fc.blocks = cfg.blocks_per_point;
  fc.oscillators = cfg.oscillators;
  fc.doppler_hz = cfg.doppler_hz;
  fc.block_period_s = cfg.block_period_s();
  const auto seed = point_seed(cfg, ebn0_index, Stream::channel);
  if (cfg.channel == ChannelKind::rician)
    return channel::gen_rician_sequence(fc, std::pow(10.0, cfg.rician_k_db / 10.0), seed);
  return channel::gen_rayleigh_sequence(fc, seed);
}

link::TransmissionBlock make_block(const ExperimentConfig& cfg, std::size_t ebn0_index, std::size_t block,
                                   const channel::ChannelRealization& ch) {
  Rng data_rng = make_rng(block_seed(cfg, ebn0_index, block, Stream::data));
  Rng noise_rng = make_rng(block_seed(cfg, ebn0_index, block, Stream::noise));
  const auto bit_count = static_cast<std::size_t>(link::kQpskBitsPerSymbol * cfg.streams * cfg.block_length);
  const ComplexFrame s = link::qpsk_modulate(link::random_bits(bit_count, data_rng), cfg.streams);
  std::optional<link::PaOptions> pa;
  if (cfg.pa_enabled) pa = link::PaOptions{cfg.pa_coeffs, cfg.pa_model};
  const double sigma2 = link::ebn0_to_noise_variance(cfg.ebn0_db.at(ebn0_index), link::kQpskBitsPerSymbol);
  return link::transmit_block(s, ch, link::svd_precoder(ch, cfg.streams), pa, sigma2, cfg.pilots, noise_rng);
}

detectors::DetectorKind neural_kind(DetectorId id) {
  switch (id) {
    case DetectorId::dnn: return detectors::DetectorKind::dnn;
    case DetectorId::cyclednn: return detectors::DetectorKind::cyclednn;
    case DetectorId::cyclegan: return detectors::DetectorKind::cyclegan;
    case DetectorId::lmmse: break;
  }
  throw DomainError("lmmse has no neural ensemble");
}

detectors::DetectorEnsemble make_ensemble(const ExperimentConfig& cfg, DetectorId id, std::size_t ebn0_index) {
  Rng init = make_rng(detector_seed(cfg, ebn0_index, 0, id, Stream::init));
  return detectors::DetectorEnsemble::create(neural_kind(id), cfg.shape, cfg.adam, cfg.pilot_weights,
                                             cfg.data_weights, init);
}

namespace {

struct DetectorState {
  DetectorId id;
  std::optional<detectors::DetectorEnsemble> ensemble;
};

}  // namespace

std::vector<MetricsRecord> run_point(const ExperimentConfig& cfg, std::size_t ebn0_index, const RecordSink& sink,
                                     const BlockObserver& observer) {
  validate(cfg);
  const auto channels = make_channels(cfg, ebn0_index);
  std::vector<DetectorState> states;
  for (auto id : cfg.detectors) {
    DetectorState st{id, std::nullopt};
    if (id != DetectorId::lmmse) st.ensemble = make_ensemble(cfg, id, ebn0_index);
    states.push_back(std::move(st));
  }

  std::vector<MetricsRecord> records;
  std::optional<detectors::PilotSet> previous;
  for (std::size_t b = 0; b < channels.size(); ++b) {
    const auto block = make_block(cfg, ebn0_index, b, channels[b]);
    for (auto& st : states) {
      const auto t0 = std::chrono::steady_clock::now();
      MetricsRecord rec;
      rec.ebn0_db = cfg.ebn0_db[ebn0_index];
      rec.block_index = b;
      rec.detector = std::string(to_string(st.id));
      rec.seed = cfg.seed;
      Bits bits;
      std::optional<detectors::BlockOutcome> outcome;
      if (st.id == DetectorId::lmmse) {
        bits = link::qpsk_hard_bits(
            detectors::lmmse_detect(block.y_payload, block.channel, block.noise_variance, 1.0, cfg.streams));
      } else {
        Rng rng = make_rng(detector_seed(cfg, ebn0_index, b, st.id, Stream::train));
        try {
          outcome = detectors::run_neural_block(*st.ensemble, block, previous ? &*previous : nullptr, cfg.train, rng);
          bits = outcome->bits;
          rec.epochs_run = outcome->supervised.epochs_run + (outcome->semi ? outcome->semi->epochs_run : 0);
          rec.used_previous_pilots = outcome->supervised.used_previous_pilots;
          rec.pseudo_label_refreshes = outcome->semi ? outcome->semi->pseudo_label_refreshes : 0;
        } catch (const InsufficientDataError& e) {
          throw InsufficientDataError(rec.detector + " at Eb/N0 " + std::to_string(rec.ebn0_db) + " dB, block " +
                                      std::to_string(b) + ": " + e.what());
        }
      }
      rec.ber = cfg.payload > 0 ? ber(bits, block.payload_bits) : 0.0;
      rec.achievable_rate_bits_per_use =
          achievable_rate(rec.ber, link::kQpskBitsPerSymbol, cfg.streams, cfg.payload_fraction());
      if (cfg.timing)
        rec.wallclock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (sink) sink(rec);
      if (observer && outcome) observer(rec, block, *outcome);
      records.push_back(std::move(rec));
    }
    previous = detectors::pilot_set(block);
  }
  return records;
}

std::vector<MetricsRecord> run_experiment(const ExperimentConfig& cfg, const RecordSink& sink,
                                          const BlockObserver& observer) {
  validate(cfg);
  const std::size_t points = cfg.ebn0_db.size();
  std::vector<std::vector<MetricsRecord>> per_point(points);
  std::mutex sink_mutex;
  const RecordSink locked = [&](const MetricsRecord& r) {
    if (!sink) return;
    std::lock_guard lock(sink_mutex);
    sink(r);
  };
  const BlockObserver locked_observer = [&](const MetricsRecord& r, const link::TransmissionBlock& b,
                                            const detectors::BlockOutcome& o) {
    if (!observer) return;
    std::lock_guard lock(sink_mutex);
    observer(r, b, o);
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(points)));
  if (workers == 1) {
    for (std::size_t e = 0; e < points; ++e) per_point[e] = run_point(cfg, e, locked, locked_observer);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t e = next++; e < points; e = next++) {
          try {
            per_point[e] = run_point(cfg, e, locked, locked_observer);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<MetricsRecord> all;
  for (auto& v : per_point) all.insert(all.end(), v.begin(), v.end());
  return all;
}

}  // namespace mimogan::harness

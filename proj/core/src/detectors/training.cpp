#include "mimogan/detectors/training.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "mimogan/common/errors.hpp"
#include "mimogan/detectors/losses.hpp"

namespace mimogan::detectors {

std::string_view to_string(StopReason r) noexcept {
  return r == StopReason::patience ? "patience" : "epoch_cap";
}

double validation_ber(const DetectorEnsemble& ens, const PairSet& val) {
  if (val.size() == 0) throw StateError("validation set is empty");
  const RealMatrix est = denormalize(ens.g_y2s.predict(val.y), ens.scales.s_max);
  const RealMatrix ref = denormalize(val.s, ens.scales.s_max);
  const Bits a = hard_bits(est);
  const Bits b = hard_bits(ref);
  std::size_t errors = 0;
  for (std::size_t i = 0; i < a.size(); ++i) errors += a[i] != b[i];
  return static_cast<double>(errors) / static_cast<double>(a.size());
}

namespace {

RealMatrix gather_rows(const RealMatrix& x, const std::vector<Eigen::Index>& order, std::size_t from,
                       std::size_t count) {
  RealMatrix out(static_cast<Eigen::Index>(count), x.cols());
  for (std::size_t i = 0; i < count; ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(order[from + i]);
  return out;
}

void check_config(const TrainConfig& cfg) {
  if (cfg.batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (cfg.patience < 1) throw ConfigError("patience must be >= 1");
  if (cfg.max_epochs < 0) throw ConfigError("max_epochs must be >= 0");
  if (cfg.pilot_augment < 1 || cfg.payload_augment < 1) throw ConfigError("augmentation factors must be >= 1");
}

}  // namespace

void train_epoch(DetectorEnsemble& ens, const PairSet& train, const LossWeights& w, const TrainConfig& cfg,
                 Rng& rng) {
  if (train.size() == 0) throw InsufficientDataError("training set is empty");
  if (train.s.rows() != train.y.rows()) throw DimensionError("training pairs have mismatched row counts");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(train.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution invert(cfg.label_invert_prob);

  const std::size_t n = order.size();
  const std::size_t batch = static_cast<std::size_t>(cfg.batch_size);
  for (std::size_t from = 0; from < n; from += batch) {
    const std::size_t count = std::min(batch, n - from);
    const RealMatrix s = gather_rows(train.s, order, from, count);
    const RealMatrix y = gather_rows(train.y, order, from, count);

    if (ens.adversarial()) {
      const bool inverted = invert(rng);
      accumulate_discriminator_gradients(ens.d_s2y, ens.g_s2y, s, y, inverted, rng);
      nn::adam_step(ens.d_s2y, ens.opt_d_s2y);
      accumulate_discriminator_gradients(ens.d_y2s, ens.g_y2s, y, s, inverted, rng);
      nn::adam_step(ens.d_y2s, ens.opt_d_y2s);
    }

    accumulate_generator_gradients(ens, s, y, w, rng);
    if (ens.bidirectional()) nn::adam_step(ens.g_s2y, ens.opt_g_s2y);
    nn::adam_step(ens.g_y2s, ens.opt_g_y2s);
  }
}

TrainReport fit(DetectorEnsemble& ens, PairSet& train, const PairSet& val, const LossWeights& w,
                const TrainConfig& cfg, Rng& rng, const std::function<void(DetectorEnsemble&, PairSet&)>& on_improve) {
  check_config(cfg);
  TrainReport report;
  double best = validation_ber(ens, val);
  DetectorEnsemble best_ens = ens;
  int since_best = 0;
  bool patience_hit = false;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    train_epoch(ens, train, w, cfg, rng);
    report.epochs_run = epoch;
    const double ber = validation_ber(ens, val);
    if (ber < best) {
      best = ber;
      since_best = 0;
      if (on_improve) on_improve(ens, train);
      best_ens = ens;
    } else if (++since_best >= cfg.patience) {
      patience_hit = true;
      break;
    }
  }

  report.stopped_by = patience_hit ? StopReason::patience : StopReason::epoch_cap;
  report.best_val_ber = best;
  ens = std::move(best_ens);
  ens.best_val_ber = best;
  return report;
}

TrainReport train_supervised(DetectorEnsemble& ens, TrainingSession& session, const PilotSet& current,
                             const PilotSet* previous, const TrainConfig& cfg, Rng& rng) {
  const Eigen::Index n = current.s.rows();
  if (n < 4 || current.y.rows() != n)
    throw InsufficientDataError("supervised training needs at least 4 pilot pairs, got " + std::to_string(n));
  if (ens.scales.s_max.size() == 0 || ens.scales.y_max.size() == 0)
    throw StateError("normalization scales are not fitted");

  const RealMatrix s = normalize(current.s, ens.scales.s_max);
  const RealMatrix y = normalize(current.y, ens.scales.y_max);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_val = static_cast<std::size_t>(std::max<Eigen::Index>(1, n / 4));
  const auto n_train = static_cast<std::size_t>(n) - n_val;

  session.train = augment(gather_rows(s, order, 0, n_train), gather_rows(y, order, 0, n_train), cfg.pilot_augment,
                          cfg.augment_noise_std, rng);
  session.val = augment(gather_rows(s, order, n_train, n_val), gather_rows(y, order, n_train, n_val),
                        cfg.pilot_augment, cfg.augment_noise_std, rng);
  session.used_previous_pilots = false;

  PairSet with_previous;
  if (previous != nullptr && previous->s.rows() > 0) {
    with_previous = concat(session.train, augment(normalize(previous->s, ens.scales.s_max),
                                                  normalize(previous->y, ens.scales.y_max), cfg.pilot_augment,
                                                  cfg.augment_noise_std, rng));
  }

  // Both candidates start from the same weights and the same random stream.
  const std::uint64_t fork = rng();
  DetectorEnsemble start = previous != nullptr && with_previous.size() > 0 ? ens : DetectorEnsemble{};

  Rng rng_current(fork);
  TrainReport report = fit(ens, session.train, session.val, ens.pilot_weights, cfg, rng_current);

  if (with_previous.size() > 0) {
    Rng rng_previous(fork);
    TrainReport alt = fit(start, with_previous, session.val, start.pilot_weights, cfg, rng_previous);
    if (alt.best_val_ber < report.best_val_ber) {
      ens = std::move(start);
      session.train = std::move(with_previous);
      session.used_previous_pilots = true;
      report = alt;
    }
  }
  report.used_previous_pilots = session.used_previous_pilots;
  return report;
}

RealMatrix pseudo_label(const DetectorEnsemble& ens, const RealMatrix& y_payload_norm) {
  return ens.g_y2s.predict(y_payload_norm);
}

TrainReport train_semisupervised(DetectorEnsemble& ens, const TrainingSession& session,
                                 const RealMatrix& y_payload_norm, const TrainConfig& cfg, Rng& rng) {
  if (session.val.size() == 0) throw StateError("semi-supervised training needs the pilot validation set");
  const bool has_payload = y_payload_norm.rows() > 0;
  Rng aug_rng(rng());

  const auto build = [&](const DetectorEnsemble& e) {
    if (!has_payload) return session.train;
    return concat(session.train, augment(e.pseudo_labels, y_payload_norm, cfg.payload_augment,
                                         cfg.augment_noise_std, aug_rng));
  };

  int refreshes = 0;
  if (has_payload) ens.pseudo_labels = pseudo_label(ens, y_payload_norm);
  PairSet train = build(ens);

  const auto refresh = [&](DetectorEnsemble& e, PairSet& t) {
    if (!has_payload) return;
    e.pseudo_labels = pseudo_label(e, y_payload_norm);
    t = build(e);
    ++refreshes;
  };
  TrainReport report = fit(ens, train, session.val, ens.data_weights, cfg, rng, refresh);
  report.pseudo_label_refreshes = refreshes;
  report.used_previous_pilots = session.used_previous_pilots;
  return report;
}

}  // namespace mimogan::detectors

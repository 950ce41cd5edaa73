#include "mimogan/channel/mimo_channel.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "mimogan/channel/jakes.hpp"
#include "mimogan/common/errors.hpp"
#include "mimogan/common/rng.hpp"

namespace mimogan::channel {

ChannelRealization ChannelRealization::from_matrix(ComplexMatrix h, std::size_t block_index, ChannelMeta meta) {
  Eigen::JacobiSVD<ComplexMatrix> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ChannelRealization ch;
  ch.u = svd.matrixU();
  ch.v = svd.matrixV();
  ch.singular_values = svd.singularValues();
  const Eigen::Index rank = ch.singular_values.size();
  for (Eigen::Index k = 0; k < ch.v.cols(); ++k) {
    Eigen::Index first = 0;
    while (first < ch.v.rows() && std::abs(ch.v(first, k)) < 1e-12) ++first;
    if (first == ch.v.rows()) continue;
    const cplx rot = std::conj(ch.v(first, k)) / std::abs(ch.v(first, k));
    ch.v.col(k) *= rot;
    ch.v(first, k) = std::abs(ch.v(first, k));
    if (k < rank && k < ch.u.cols()) ch.u.col(k) *= rot;
  }
  ch.h = std::move(h);
  ch.block_index = block_index;
  ch.meta = meta;
  return ch;
}

std::vector<ChannelRealization> gen_rayleigh_sequence(const FadingConfig& cfg, std::uint64_t seed) {
  if (cfg.rx <= 0 || cfg.tx <= 0) throw DimensionError("channel dimensions must be positive");
  if (cfg.blocks < 1) throw DomainError("channel sequence needs at least one block");
  if (cfg.doppler_hz < 0.0) throw DomainError("maximum Doppler must be non-negative");

  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double window = cfg.doppler_hz > 0.0 ? 1e4 / cfg.doppler_hz : 1.0;
  std::uniform_real_distribution<double> start(0.0, window);

  std::vector<ComplexMatrix> hs(cfg.blocks, ComplexMatrix(cfg.rx, cfg.tx));
  JakesParams p;
  p.power = unit_power_amplitude(cfg.doppler_hz);
  p.oscillators = cfg.oscillators;
  p.max_doppler_hz = cfg.doppler_hz;
  p.sample_period_s = cfg.block_period_s;
  p.phases.resize(static_cast<std::size_t>(cfg.oscillators));
  for (Eigen::Index i = 0; i < cfg.rx; ++i) {
    for (Eigen::Index j = 0; j < cfg.tx; ++j) {
      p.initial_time_s = start(rng);
      for (auto& ph : p.phases) ph = phase(rng);
      p.doppler_phase = phase(rng);
      for (std::size_t l = 0; l < cfg.blocks; ++l) hs[l](i, j) = jakes_sample(p, static_cast<std::int64_t>(l));
    }
  }

  std::vector<ChannelRealization> out;
  out.reserve(cfg.blocks);
  for (std::size_t l = 0; l < cfg.blocks; ++l)
    out.push_back(ChannelRealization::from_matrix(std::move(hs[l]), l, {cfg.doppler_hz, 0.0, seed}));
  return out;
}

ComplexMatrix los_matrix(Eigen::Index rx, Eigen::Index tx, std::uint64_t seed) {
  Rng rng = make_rng(derive_seed(seed, {tag(Stream::los)}));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double offset_r = phase(rng), ramp_r = phase(rng);
  const double offset_t = phase(rng), ramp_t = phase(rng);
  ComplexVector ar(rx), at(tx);
  for (Eigen::Index i = 0; i < rx; ++i) ar(i) = std::polar(1.0, offset_r + ramp_r * static_cast<double>(i));
  for (Eigen::Index j = 0; j < tx; ++j) at(j) = std::polar(1.0, offset_t + ramp_t * static_cast<double>(j));
  return ar * at.adjoint();
}

std::vector<ChannelRealization> gen_rician_sequence(const FadingConfig& cfg, double k_factor, std::uint64_t seed) {
  if (!(k_factor >= 0.0)) throw DomainError("Rician factor must be non-negative");
  auto seq = gen_rayleigh_sequence(cfg, seed);
  if (k_factor == 0.0) return seq;
  const ComplexMatrix los = los_matrix(cfg.rx, cfg.tx, seed);
  const double a_los = std::sqrt(k_factor / (k_factor + 1.0));
  const double a_sc = std::sqrt(1.0 / (k_factor + 1.0));
  for (auto& ch : seq) {
    ComplexMatrix h = a_los * los + a_sc * ch.h;
    ch = ChannelRealization::from_matrix(std::move(h), ch.block_index, {cfg.doppler_hz, k_factor, seed});
  }
  return seq;
}

}  // namespace mimogan::channel

#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mimogan/channel/mimo_channel.hpp"
#include "mimogan/detectors/losses.hpp"
#include "mimogan/link/qpsk.hpp"
#include "mimogan/link/transmitter.hpp"
#include "mimogan/nn/network.hpp"

namespace mimogan::testing {

// Q(sqrt(2 Eb/N0)): uncoded Gray QPSK bit error probability on AWGN.
inline double qpsk_ber_awgn(double ebn0_db) {
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  return 0.5 * std::erfc(std::sqrt(ebn0));
}

inline double rel_error(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

// Random chain of up to three dense layers (widths <= 16) with leaky ReLU,
// tanh and dropout interleaved.
inline nn::NeuralNet random_small_net(Rng& rng, Eigen::Index& input_width) {
  std::uniform_int_distribution<int> layers_dist(1, 3);
  std::uniform_int_distribution<Eigen::Index> width_dist(1, 16);
  std::uniform_int_distribution<int> act_dist(0, 2);
  input_width = width_dist(rng);
  std::vector<nn::LayerSpec> specs;
  const int dense_layers = layers_dist(rng);
  for (int i = 0; i < dense_layers; ++i) {
    specs.push_back(nn::LayerSpec::dense(width_dist(rng)));
    switch (act_dist(rng)) {
      case 0: specs.push_back(nn::LayerSpec::leaky_relu(0.2)); break;
      case 1: specs.push_back(nn::LayerSpec::tanh()); break;
      default: break;
    }
    if (i + 1 < dense_layers && act_dist(rng) == 0) specs.push_back(nn::LayerSpec::dropout(0.25));
  }
  nn::NeuralNet net(input_width, specs, rng);
  // Non-zero biases so every code path sees a generic operating point.
  std::normal_distribution<double> n01(0.0, 0.3);
  for (auto& p : net.params())
    for (Eigen::Index k = 0; k < p.bias.size(); ++k) p.bias(k) = n01(rng);
  return net;
}

struct GradCheck {
  double max_param_error = 0.0;
  double max_input_error = 0.0;
  std::size_t checked = 0;
};

// Central finite differences (step h) of L = sum(out .* weights) against
// backprop through a train-mode trace. The dropout masks are frozen by
// replaying the same engine state for every evaluation.
inline GradCheck finite_difference_check(nn::NeuralNet& net, const RealMatrix& x, const RealMatrix& weights,
                                         const Rng& mask_state, double h = 1e-5) {
  const auto loss = [&](const nn::NeuralNet& n, const RealMatrix& in) {
    Rng r = mask_state;
    return n.forward_traced(in, r).output.cwiseProduct(weights).sum();
  };
  net.zero_grad();
  Rng r = mask_state;
  const auto trace = net.forward_traced(x, r);
  const RealMatrix dx = net.backward(trace, weights);

  GradCheck out;
  for (auto& p : net.params()) {
    for (int which = 0; which < 2; ++which) {
      double* values = which == 0 ? p.weight.data() : p.bias.data();
      const double* grads = which == 0 ? p.weight_grad.data() : p.bias_grad.data();
      const Eigen::Index n = which == 0 ? p.weight.size() : p.bias.size();
      for (Eigen::Index k = 0; k < n; ++k) {
        const double keep = values[k];
        values[k] = keep + h;
        const double up = loss(net, x);
        values[k] = keep - h;
        const double down = loss(net, x);
        values[k] = keep;
        out.max_param_error = std::max(out.max_param_error, rel_error(grads[k], (up - down) / (2 * h)));
        ++out.checked;
      }
    }
  }
  RealMatrix xp = x;
  for (Eigen::Index k = 0; k < xp.size(); ++k) {
    const double keep = xp.data()[k];
    xp.data()[k] = keep + h;
    const double up = loss(net, xp);
    xp.data()[k] = keep - h;
    const double down = loss(net, xp);
    xp.data()[k] = keep;
    out.max_input_error = std::max(out.max_input_error, rel_error(dx.data()[k], (up - down) / (2 * h)));
  }
  return out;
}

// Mean |h|^2 over `paths` independent paths drawn as square single-block
// sequences under consecutive seeds.
inline double mean_path_power(std::size_t paths, double doppler_hz, double k_factor, std::uint64_t seed) {
  channel::FadingConfig cfg;
  cfg.rx = cfg.tx = 50;
  cfg.blocks = 1;
  cfg.doppler_hz = doppler_hz;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::uint64_t s = seed; n < paths; ++s) {
    const auto seq = k_factor > 0.0 ? channel::gen_rician_sequence(cfg, k_factor, s)
                                    : channel::gen_rayleigh_sequence(cfg, s);
    sum += seq[0].h.cwiseAbs2().sum();
    n += static_cast<std::size_t>(seq[0].h.size());
  }
  return sum / static_cast<double>(n);
}

// Largest |Re R(l) - J0(2 pi fd Ts l)| over lags l <= max_lag, where R is the
// normalized time-average autocorrelation of one path with `samples` samples.
inline double max_autocorrelation_deviation(double fd_ts, std::size_t samples, std::size_t max_lag,
                                            std::uint64_t seed) {
  channel::FadingConfig cfg;
  cfg.rx = cfg.tx = 1;
  cfg.blocks = samples;
  cfg.doppler_hz = 100.0;
  cfg.block_period_s = fd_ts / cfg.doppler_hz;
  const auto seq = channel::gen_rayleigh_sequence(cfg, seed);
  std::vector<cplx> h(samples);
  for (std::size_t k = 0; k < samples; ++k) h[k] = seq[k].h(0, 0);
  double power = 0.0;
  for (const auto& v : h) power += std::norm(v);
  power /= static_cast<double>(samples);
  double worst = 0.0;
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k + lag < samples; ++k) acc += h[k + lag] * std::conj(h[k]);
    const double r = acc.real() / static_cast<double>(samples - lag) / power;
    const double j0 = std::cyl_bessel_j(0.0, 2.0 * 3.14159265358979323846 * fd_ts * static_cast<double>(lag));
    worst = std::max(worst, std::abs(r - j0));
  }
  return worst;
}

// Noiseless block through an identity channel with identity precoding.
inline link::TransmissionBlock identity_block(Eigen::Index streams, Eigen::Index pilots, Eigen::Index payload,
                                              std::uint64_t seed) {
  Rng rng(seed);
  const Bits bits = link::random_bits(static_cast<std::size_t>(2 * streams * (pilots + payload)), rng);
  const ComplexFrame s = link::qpsk_modulate(bits, streams);
  const auto ch = channel::ChannelRealization::from_matrix(ComplexMatrix::Identity(streams, streams));
  return link::transmit_block(s, ch, ComplexMatrix::Identity(streams, streams), std::nullopt, 0.0, pilots, rng);
}

// Trains a discriminator on real and fake pairs drawn from one distribution
// (targets are independent train-mode draws of the same generator) and
// returns its mean eval output on fresh real and fake pairs.
inline double matched_discriminator_mean(std::uint64_t seed, int steps = 400) {
  Rng rng(seed);
  const Eigen::Index f = 4;
  nn::NeuralNet gen(f, {nn::LayerSpec::dense(16), nn::LayerSpec::leaky_relu(), nn::LayerSpec::dropout(0.5),
                        nn::LayerSpec::dense(f), nn::LayerSpec::tanh()},
                    rng);
  nn::NeuralNet disc(2 * f, {nn::LayerSpec::dense(32), nn::LayerSpec::leaky_relu(), nn::LayerSpec::dense(16),
                             nn::LayerSpec::leaky_relu(), nn::LayerSpec::dense(1)},
                     rng);
  nn::AdamConfig adam;
  adam.learning_rate = 1e-3;
  auto opt = nn::AdamState::for_net(disc, adam);
  for (int step = 0; step < steps; ++step) {
    const RealMatrix x = RealMatrix::Random(128, f);
    const RealMatrix real = gen.forward_traced(x, rng).output;
    detectors::accumulate_discriminator_gradients(disc, gen, x, real, false, rng);
    nn::adam_step(disc, opt);
  }
  const RealMatrix x = RealMatrix::Random(4096, f);
  const RealMatrix real = gen.forward_traced(x, rng).output;
  const RealMatrix fake = gen.forward_traced(x, rng).output;
  return 0.5 * (disc.predict(detectors::concat_pairs(x, real)).mean() +
                disc.predict(detectors::concat_pairs(x, fake)).mean());
}

}  // namespace mimogan::testing

#pragma once

#include <cstdint>
#include <vector>

#include "mimogan/common/types.hpp"

namespace mimogan::channel {

struct ChannelMeta {
  double doppler_hz = 0.0;
  double rician_factor = 0.0;  // linear K_R, 0 = Rayleigh
  std::uint64_t seed = 0;
};

// One block's channel matrix with its SVD H = U diag(sigma) V^H.
// Singular-vector phases are normalized so the first non-negligible entry
// of every column of V is real and positive (U columns rotate with it).
struct ChannelRealization {
  ComplexMatrix h;                // [N_r x N_s]
  ComplexMatrix u;                // [N_r x N_r]
  RealVector singular_values;     // descending, length min(N_r, N_s)
  ComplexMatrix v;                // [N_s x N_s]
  std::size_t block_index = 0;
  ChannelMeta meta;

  static ChannelRealization from_matrix(ComplexMatrix h, std::size_t block_index = 0, ChannelMeta meta = {});

  Eigen::Index rx() const noexcept { return h.rows(); }
  Eigen::Index tx() const noexcept { return h.cols(); }
};

struct FadingConfig {
  Eigen::Index rx = 8;          // N_r
  Eigen::Index tx = 64;         // N_s
  std::size_t blocks = 1;
  int oscillators = 16;         // N0 per path
  double doppler_hz = 926.0;    // f_d
  double block_period_s = 320e-6;  // K symbols at 1 Msym/s
};

// One independent sum-of-sinusoids process per (rx, tx) path, each with a
// random start time and random phases, sampled once per block.
std::vector<ChannelRealization> gen_rayleigh_sequence(const FadingConfig& cfg, std::uint64_t seed);

// sqrt(K/(K+1)) H_LoS + sqrt(1/(K+1)) H_scatter, where H_scatter is the
// Rayleigh sequence for the same seed and H_LoS a fixed rank-1 unit-modulus
// matrix. Throws DomainError for negative K.
std::vector<ChannelRealization> gen_rician_sequence(const FadingConfig& cfg, double k_factor, std::uint64_t seed);

// Rank-1 line-of-sight matrix a_r a_t^H with unit-modulus entries whose
// phases follow a seeded random linear ramp.
ComplexMatrix los_matrix(Eigen::Index rx, Eigen::Index tx, std::uint64_t seed);

}  // namespace mimogan::channel

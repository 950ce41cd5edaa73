#pragma once

#include <cstdint>
#include <string>

#include "mimogan/common/types.hpp"

namespace mimogan::harness {

// One (Eb/N0, block, detector) measurement.
struct MetricsRecord {
  double ebn0_db = 0.0;
  std::size_t block_index = 0;
  std::string detector;
  double ber = 0.0;
  double achievable_rate_bits_per_use = 0.0;
  int epochs_run = 0;
  bool used_previous_pilots = false;
  int pseudo_label_refreshes = 0;
  double wallclock_s = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const MetricsRecord&) const = default;
};

// Hamming distance over length. Throws DimensionError on empty or unequal inputs.
double ber(const Bits& detected, const Bits& truth);

// -p log2 p - (1-p) log2 (1-p), with H_b(0) = H_b(1) = 0.
double binary_entropy(double p);

// rho * n * m * (1 - H_b(min(p, 1 - p))). Throws DomainError for p outside [0, 1].
double achievable_rate(double p, int bits_per_symbol, Eigen::Index streams, double payload_fraction);

}  // namespace mimogan::harness

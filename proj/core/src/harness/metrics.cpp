#include "mimogan/harness/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mimogan/common/errors.hpp"

namespace mimogan::harness {

double ber(const Bits& detected, const Bits& truth) {
  if (detected.empty() || detected.size() != truth.size())
    throw DimensionError("ber: lengths " + std::to_string(detected.size()) + " and " + std::to_string(truth.size()));
  std::size_t errors = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) errors += (detected[i] != 0) != (truth[i] != 0);
  return static_cast<double>(errors) / static_cast<double>(truth.size());
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double achievable_rate(double p, int bits_per_symbol, Eigen::Index streams, double payload_fraction) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("achievable_rate: BER must lie in [0, 1]");
  const double q = std::min(p, 1.0 - p);
  return payload_fraction * static_cast<double>(streams) * bits_per_symbol * (1.0 - binary_entropy(q));
}

}  // namespace mimogan::harness

#include "mimogan/channel/jakes.hpp"

#include <cmath>
#include <numbers>

#include "mimogan/common/errors.hpp"

namespace mimogan::channel {

double oscillator_frequency(const JakesParams& p, int n) {
  const double wd = 2.0 * std::numbers::pi * p.max_doppler_hz;
  return wd * std::cos(2.0 * std::numbers::pi * n / (4.0 * p.oscillators + 2.0));
}

cplx jakes_at(const JakesParams& p, double t) {
  if (p.oscillators < 1) throw DomainError("Jakes model needs at least one oscillator");
  if (p.max_doppler_hz < 0.0) throw DomainError("maximum Doppler must be non-negative");
  if (static_cast<int>(p.phases.size()) != p.oscillators)
    throw DimensionError("Jakes phases: expected " + std::to_string(p.oscillators) + ", got " +
                         std::to_string(p.phases.size()));
  double hi = 0.0;
  double hq = 0.0;
  for (int n = 1; n <= p.oscillators; ++n) {
    const double c = std::cos(oscillator_frequency(p, n) * t);
    hi += std::cos(p.phases[static_cast<std::size_t>(n - 1)]) * c;
    hq += std::sin(p.phases[static_cast<std::size_t>(n - 1)]) * c;
  }
  const double cd = std::cos(2.0 * std::numbers::pi * p.max_doppler_hz * t);
  hi = 2.0 * hi + std::sqrt(2.0) * std::cos(p.doppler_phase) * cd;
  hq = 2.0 * hq + std::sqrt(2.0) * std::sin(p.doppler_phase) * cd;
  const double scale = p.power / std::sqrt(2.0 * p.oscillators + 1.0);
  return {scale * hi, scale * hq};
}

cplx jakes_sample(const JakesParams& p, std::int64_t k) {
  return jakes_at(p, p.initial_time_s + static_cast<double>(k) * p.sample_period_s);
}

double unit_power_amplitude(double max_doppler_hz) {
  return max_doppler_hz > 0.0 ? 1.0 : std::sqrt(0.5);
}

}  // namespace mimogan::channel

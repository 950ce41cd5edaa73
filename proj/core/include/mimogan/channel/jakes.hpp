#pragma once

#include <cstdint>
#include <vector>

#include "mimogan/common/types.hpp"

namespace mimogan::channel {

// Sum-of-sinusoids fading process for one path:
//
//   h_k = E0 / sqrt(2 N0 + 1) * [h_I(t0 + k Ts) + j h_Q(t0 + k Ts)]
//   h_I(t) = 2 sum_n cos(phi_n) cos(w_n t) + sqrt(2) cos(phi_N) cos(w_d t)
//   h_Q(t) = 2 sum_n sin(phi_n) cos(w_n t) + sqrt(2) sin(phi_N) cos(w_d t)
//
// with w_d = 2 pi f_d and w_n = w_d cos(2 pi n / (4 N0 + 2)).
struct JakesParams {
  double power = 1.0;          // E0 (amplitude scale)
  int oscillators = 16;        // N0
  double max_doppler_hz = 0.0; // f_d
  double sample_period_s = 1e-3;
  double initial_time_s = 0.0;
  std::vector<double> phases;  // phi_1 .. phi_N0
  double doppler_phase = 0.0;  // phi_N
};

// Angular frequency of oscillator n in 1..N0.
double oscillator_frequency(const JakesParams& p, int n);

// Continuous-time process value at absolute time t (seconds).
cplx jakes_at(const JakesParams& p, double t);

// Sample k of the sequence, taken at t0 + k * Ts.
cplx jakes_sample(const JakesParams& p, std::int64_t k);

// E0 giving unit mean path power when phases (and, for f_d > 0, the start
// time) are uniformly random. With f_d > 0 every cosine averages to 1/2
// over time; at f_d = 0 the cosines are frozen at 1 and the power doubles.
double unit_power_amplitude(double max_doppler_hz);

}  // namespace mimogan::channel

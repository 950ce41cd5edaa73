#pragma once

#include "mimogan/channel/mimo_channel.hpp"

namespace mimogan::detectors {

// Non-blind per-stream LMMSE after receive rotation by U^H:
//   s_i = sigma_i Es / (sigma_i^2 Es + noise_var) * (U^H y)_i
ComplexFrame lmmse_detect(const ComplexFrame& y_payload, const channel::ChannelRealization& ch,
                          double noise_variance, double symbol_energy, Eigen::Index streams);

}  // namespace mimogan::detectors

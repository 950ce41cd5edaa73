#pragma once

#include "mimogan/channel/mimo_channel.hpp"

namespace mimogan::link {

// First `streams` right singular vectors of H (descending singular values),
// so U^H H F = diag(sigma_1..sigma_n). Throws DomainError if streams exceeds
// min(N_r, N_s).
ComplexMatrix svd_precoder(const channel::ChannelRealization& ch, Eigen::Index streams);

}  // namespace mimogan::link

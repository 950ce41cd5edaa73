#pragma once

#include <iosfwd>
#include <optional>

#include "mimogan/channel/mimo_channel.hpp"
#include "mimogan/common/rng.hpp"
#include "mimogan/link/pa.hpp"

namespace mimogan::link {

// One coherence block of K = P + D symbols; pilots occupy the first P
// columns of the transmitted frame.
struct TransmissionBlock {
  ComplexFrame s_pilot;    // [streams x P]
  ComplexFrame y_pilot;    // [N_r x P]
  ComplexFrame s_payload;  // [streams x D]
  ComplexFrame y_payload;  // [N_r x D]
  Bits payload_bits;       // 2 * streams * D
  double noise_variance = 0.0;
  channel::ChannelRealization channel;

  Eigen::Index pilots() const noexcept { return s_pilot.cols(); }
  Eigen::Index payload() const noexcept { return s_payload.cols(); }
  Eigen::Index streams() const noexcept { return s_pilot.rows(); }
};

struct PaOptions {
  PACoeffs coeffs = PACoeffs::paper_default();
  PaModel model = PaModel::polynomial;
};

// sigma^2 = Es / (m * 10^(ebn0_db / 10)): total complex noise power per
// receive sample, with Es the transmit symbol energy per stream.
double ebn0_to_noise_variance(double ebn0_db, int bits_per_symbol, double symbol_energy = 1.0);

// Y = H g(F S) + N, with g applied per transmit antenna after precoding.
// Columns [0, pilot_count) become the pilot part, the rest the payload.
TransmissionBlock transmit_block(const ComplexFrame& symbols, const channel::ChannelRealization& ch,
                                 const ComplexMatrix& precoder, const std::optional<PaOptions>& pa,
                                 double noise_variance, Eigen::Index pilot_count, Rng& noise_rng);

// Uniform random bits.
Bits random_bits(std::size_t count, Rng& rng);

// Audit dump: the channel CSV section followed by a "role,stream,symbol,re,im" section.
void write_block_csv(const TransmissionBlock& block, std::ostream& out);

}  // namespace mimogan::link

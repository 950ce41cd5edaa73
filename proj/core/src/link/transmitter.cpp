#include "mimogan/link/transmitter.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "mimogan/channel/dump.hpp"
#include "mimogan/channel/noise.hpp"
#include "mimogan/common/errors.hpp"
#include "mimogan/link/qpsk.hpp"

namespace mimogan::link {

double ebn0_to_noise_variance(double ebn0_db, int bits_per_symbol, double symbol_energy) {
  if (bits_per_symbol < 1) throw DomainError("bits per symbol must be >= 1");
  if (!(symbol_energy > 0.0)) throw DomainError("symbol energy must be positive");
  return symbol_energy / (bits_per_symbol * std::pow(10.0, ebn0_db / 10.0));
}

TransmissionBlock transmit_block(const ComplexFrame& symbols, const channel::ChannelRealization& ch,
                                 const ComplexMatrix& precoder, const std::optional<PaOptions>& pa,
                                 double noise_variance, Eigen::Index pilot_count, Rng& noise_rng) {
  if (precoder.rows() != ch.tx() || precoder.cols() != symbols.rows()) {
    throw DimensionError("transmit_block: precoder " + shape_str(precoder.rows(), precoder.cols()) +
                         " incompatible with channel " + shape_str(ch.rx(), ch.tx()) + " and symbols " +
                         shape_str(symbols.rows(), symbols.cols()));
  }
  if (pilot_count < 0 || pilot_count > symbols.cols())
    throw DimensionError("transmit_block: pilot count " + std::to_string(pilot_count) + " exceeds block length " +
                         std::to_string(symbols.cols()));

  ComplexFrame precoded = precoder * symbols;
  if (pa) precoded = pa_apply(precoded, pa->coeffs, pa->model);
  ComplexFrame received = ch.h * precoded;
  received += channel::awgn(received.rows(), received.cols(), {noise_variance}, noise_rng);

  const Eigen::Index payload = symbols.cols() - pilot_count;
  TransmissionBlock block;
  block.s_pilot = symbols.leftCols(pilot_count);
  block.y_pilot = received.leftCols(pilot_count);
  block.s_payload = symbols.rightCols(payload);
  block.y_payload = received.rightCols(payload);
  block.payload_bits = qpsk_hard_bits(block.s_payload);
  block.noise_variance = noise_variance;
  block.channel = ch;
  return block;
}

Bits random_bits(std::size_t count, Rng& rng) {
  Bits bits(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
  }
  return bits;
}

void write_block_csv(const TransmissionBlock& block, std::ostream& out) {
  channel::write_channel_csv({block.channel}, out);
  out << "role,stream,symbol,re,im\n" << std::setprecision(17);
  const auto section = [&out](const char* role, const ComplexFrame& f) {
    for (Eigen::Index t = 0; t < f.cols(); ++t)
      for (Eigen::Index i = 0; i < f.rows(); ++i)
        out << role << ',' << i << ',' << t << ',' << f(i, t).real() << ',' << f(i, t).imag() << '\n';
  };
  section("S_P", block.s_pilot);
  section("Y_P", block.y_pilot);
  section("S_D", block.s_payload);
  section("Y_D", block.y_payload);
}

}  // namespace mimogan::link

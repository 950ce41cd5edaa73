#include "mimogan/link/qpsk.hpp"

#include <cmath>

#include "mimogan/common/errors.hpp"

namespace mimogan::link {

ComplexFrame qpsk_modulate(std::span<const std::uint8_t> bits, Eigen::Index streams) {
  if (streams <= 0) throw FramingError("QPSK needs at least one stream");
  const auto per_period = static_cast<std::size_t>(kQpskBitsPerSymbol * streams);
  if (bits.size() % per_period != 0) {
    throw FramingError("QPSK framing: " + std::to_string(bits.size()) + " bits is not a multiple of " +
                       std::to_string(per_period));
  }
  const auto symbols = static_cast<Eigen::Index>(bits.size() / per_period);
  const double a = 1.0 / std::sqrt(2.0);
  ComplexFrame frame(streams, symbols);
  std::size_t p = 0;
  for (Eigen::Index t = 0; t < symbols; ++t)
    for (Eigen::Index i = 0; i < streams; ++i, p += 2)
      frame(i, t) = {a * (1.0 - 2.0 * (bits[p] & 1)), a * (1.0 - 2.0 * (bits[p + 1] & 1))};
  return frame;
}

Bits qpsk_hard_bits(const ComplexFrame& frame) {
  Bits bits;
  bits.reserve(static_cast<std::size_t>(2 * frame.size()));
  for (Eigen::Index t = 0; t < frame.cols(); ++t)
    for (Eigen::Index i = 0; i < frame.rows(); ++i) {
      bits.push_back(frame(i, t).real() < 0.0 ? 1 : 0);
      bits.push_back(frame(i, t).imag() < 0.0 ? 1 : 0);
    }
  return bits;
}

}  // namespace mimogan::link

#include "mimogan/link/precoder.hpp"

#include "mimogan/common/errors.hpp"

namespace mimogan::link {

ComplexMatrix svd_precoder(const channel::ChannelRealization& ch, Eigen::Index streams) {
  if (streams <= 0 || streams > std::min(ch.rx(), ch.tx())) {
    throw DomainError("svd_precoder: " + std::to_string(streams) + " streams exceeds min(N_r, N_s) = " +
                      std::to_string(std::min(ch.rx(), ch.tx())));
  }
  return ch.v.leftCols(streams);
}

}  // namespace mimogan::link

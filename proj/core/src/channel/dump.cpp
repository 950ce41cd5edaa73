#include "mimogan/channel/dump.hpp"

#include <iomanip>
#include <ostream>

namespace mimogan::channel {

void write_channel_csv(const std::vector<ChannelRealization>& sequence, std::ostream& out) {
  out << "block,rx,tx,re,im\n";
  out << std::setprecision(17);
  for (const auto& ch : sequence)
    for (Eigen::Index i = 0; i < ch.h.rows(); ++i)
      for (Eigen::Index j = 0; j < ch.h.cols(); ++j)
        out << ch.block_index << ',' << i << ',' << j << ',' << ch.h(i, j).real() << ',' << ch.h(i, j).imag()
            << '\n';
}

}  // namespace mimogan::channel

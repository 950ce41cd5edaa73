#pragma once

#include <iosfwd>
#include <vector>

#include "mimogan/channel/mimo_channel.hpp"

namespace mimogan::channel {

// Audit dump: header "block,rx,tx,re,im", one row per matrix entry.
void write_channel_csv(const std::vector<ChannelRealization>& sequence, std::ostream& out);

}  // namespace mimogan::channel

#pragma once

#include <span>

#include "mimogan/common/types.hpp"

namespace mimogan::link {

inline constexpr int kQpskBitsPerSymbol = 2;

// Gray-mapped unit-energy QPSK: (b_I, b_Q) -> ((1 - 2 b_I) + j (1 - 2 b_Q)) / sqrt(2).
// Consecutive bit pairs fill all streams of one symbol period before moving
// to the next period: pair p lands at stream p % streams, symbol p / streams.
// Throws FramingError unless bits.size() is a multiple of 2 * streams.
ComplexFrame qpsk_modulate(std::span<const std::uint8_t> bits, Eigen::Index streams);

// Hard decisions in the same bit order: b_I = Re < 0, b_Q = Im < 0 (exact zero -> 0).
Bits qpsk_hard_bits(const ComplexFrame& frame);

}  // namespace mimogan::link

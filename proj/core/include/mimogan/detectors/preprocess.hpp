#pragma once

#include "mimogan/common/rng.hpp"
#include "mimogan/common/types.hpp"

namespace mimogan::detectors {

// Complex frame [streams x symbols] -> real matrix [symbols x 2*streams],
// one row per symbol period with Re/Im interleaved (column 2k = Re, 2k+1 = Im).
RealMatrix flatten(const ComplexFrame& frame);

// Exact inverse of flatten. Throws FramingError on an odd column count.
ComplexFrame unflatten(const RealMatrix& flat);

// Hard QPSK decisions on a flattened matrix, in the bit order of
// link::qpsk_hard_bits(unflatten(flat)).
Bits hard_bits(const RealMatrix& flat);

enum class ScaleMode {
  per_domain,        // each domain divided by its own per-feature maxima
  shared_transmit,   // received features divided by transmit maxima
};

// Per-feature max-abs normalization factors for both domains.
struct PreprocScales {
  RealVector s_max;
  RealVector y_max;
};

// Throws FitError if any feature's maximum is zero (or the inputs are empty).
PreprocScales fit_scales(const RealMatrix& s_flat, const RealMatrix& y_flat,
                         ScaleMode mode = ScaleMode::per_domain);

RealMatrix normalize(const RealMatrix& x, const RealVector& scale);
RealMatrix denormalize(const RealMatrix& x, const RealVector& scale);

// Paired transmit/received rows.
struct PairSet {
  RealMatrix s;
  RealMatrix y;

  Eigen::Index size() const noexcept { return s.rows(); }
};

// Stacks two pair sets row-wise.
PairSet concat(const PairSet& a, const PairSet& b);

// Originals first, followed by (factor - 1) noisy copies of every pair; the
// same-size Gaussian noise (std noise_std) is drawn independently for s and y.
PairSet augment(const RealMatrix& s, const RealMatrix& y, int factor, double noise_std, Rng& rng);

}  // namespace mimogan::detectors

#pragma once

#include "mimogan/common/rng.hpp"
#include "mimogan/common/types.hpp"

namespace mimogan::channel {

// Total complex noise power per sample; each real dimension gets variance/2.
struct NoiseSpec {
  double variance = 0.0;
};

// I.i.d. circularly-symmetric complex Gaussian matrix.
ComplexMatrix awgn(Eigen::Index rows, Eigen::Index cols, NoiseSpec spec, Rng& rng);

}  // namespace mimogan::channel

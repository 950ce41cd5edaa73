#include "mimogan/channel/noise.hpp"

#include <cmath>

#include "mimogan/common/errors.hpp"

namespace mimogan::channel {

ComplexMatrix awgn(Eigen::Index rows, Eigen::Index cols, NoiseSpec spec, Rng& rng) {
  if (!(spec.variance >= 0.0)) throw DomainError("noise variance must be non-negative");
  ComplexMatrix n = ComplexMatrix::Zero(rows, cols);
  if (spec.variance == 0.0) return n;
  std::normal_distribution<double> gauss(0.0, std::sqrt(spec.variance / 2.0));
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      n(r, c) = {re, im};
    }
  return n;
}

}  // namespace mimogan::channel

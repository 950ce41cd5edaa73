#include "mimogan/detectors/lmmse.hpp"

#include "mimogan/common/errors.hpp"

namespace mimogan::detectors {

ComplexFrame lmmse_detect(const ComplexFrame& y_payload, const channel::ChannelRealization& ch,
                          double noise_variance, double symbol_energy, Eigen::Index streams) {
  if (y_payload.rows() != ch.rx()) throw DimensionError("lmmse_detect: received rows do not match N_r");
  if (streams > ch.singular_values.size()) throw DomainError("lmmse_detect: more streams than singular values");
  const ComplexFrame rotated = ch.u.adjoint() * y_payload;
  ComplexFrame s(streams, y_payload.cols());
  for (Eigen::Index i = 0; i < streams; ++i) {
    const double sigma = ch.singular_values(i);
    const double denom = sigma * sigma * symbol_energy + noise_variance;
    const double gain = denom > 0.0 ? sigma * symbol_energy / denom : 0.0;
    s.row(i) = gain * rotated.row(i);
  }
  return s;
}

}  // namespace mimogan::detectors

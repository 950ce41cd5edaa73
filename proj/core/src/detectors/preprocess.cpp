#include "mimogan/detectors/preprocess.hpp"

#include "mimogan/common/errors.hpp"

namespace mimogan::detectors {

RealMatrix flatten(const ComplexFrame& frame) {
  RealMatrix flat(frame.cols(), 2 * frame.rows());
  for (Eigen::Index t = 0; t < frame.cols(); ++t)
    for (Eigen::Index k = 0; k < frame.rows(); ++k) {
      flat(t, 2 * k) = frame(k, t).real();
      flat(t, 2 * k + 1) = frame(k, t).imag();
    }
  return flat;
}

ComplexFrame unflatten(const RealMatrix& flat) {
  if (flat.cols() % 2 != 0) throw FramingError("unflatten: odd feature width " + std::to_string(flat.cols()));
  ComplexFrame frame(flat.cols() / 2, flat.rows());
  for (Eigen::Index t = 0; t < flat.rows(); ++t)
    for (Eigen::Index k = 0; k < frame.rows(); ++k) frame(k, t) = {flat(t, 2 * k), flat(t, 2 * k + 1)};
  return frame;
}

Bits hard_bits(const RealMatrix& flat) {
  if (flat.cols() % 2 != 0) throw FramingError("hard_bits: odd feature width " + std::to_string(flat.cols()));
  Bits bits(static_cast<std::size_t>(flat.size()));
  std::size_t i = 0;
  for (Eigen::Index r = 0; r < flat.rows(); ++r)
    for (Eigen::Index c = 0; c < flat.cols(); ++c) bits[i++] = flat(r, c) < 0.0 ? 1 : 0;
  return bits;
}

namespace {
RealVector column_max_abs(const RealMatrix& x, const char* domain) {
  if (x.rows() == 0) throw FitError(std::string("fit_scales: no ") + domain + " rows");
  RealVector m = x.cwiseAbs().colwise().maxCoeff().transpose();
  for (Eigen::Index k = 0; k < m.size(); ++k)
    if (!(m(k) > 0.0)) throw FitError(std::string("fit_scales: ") + domain + " feature " + std::to_string(k) + " is all zero");
  return m;
}
}  // namespace

PreprocScales fit_scales(const RealMatrix& s_flat, const RealMatrix& y_flat, ScaleMode mode) {
  PreprocScales scales;
  scales.s_max = column_max_abs(s_flat, "transmit");
  if (mode == ScaleMode::shared_transmit) {
    if (y_flat.cols() != s_flat.cols())
      throw DimensionError("shared scaling needs equal widths, got " + std::to_string(s_flat.cols()) + " and " +
                           std::to_string(y_flat.cols()));
    scales.y_max = scales.s_max;
  } else {
    scales.y_max = column_max_abs(y_flat, "received");
  }
  return scales;
}

RealMatrix normalize(const RealMatrix& x, const RealVector& scale) {
  if (x.cols() != scale.size())
    throw DimensionError("normalize: " + shape_str(x.rows(), x.cols()) + " vs " + std::to_string(scale.size()) +
                         " scales");
  return (x.array().rowwise() / scale.transpose().array()).matrix();
}

RealMatrix denormalize(const RealMatrix& x, const RealVector& scale) {
  if (x.cols() != scale.size())
    throw DimensionError("denormalize: " + shape_str(x.rows(), x.cols()) + " vs " + std::to_string(scale.size()) +
                         " scales");
  return (x.array().rowwise() * scale.transpose().array()).matrix();
}

PairSet concat(const PairSet& a, const PairSet& b) {
  if (a.size() == 0) return b;
  if (b.size() == 0) return a;
  PairSet out;
  out.s.resize(a.s.rows() + b.s.rows(), a.s.cols());
  out.s << a.s, b.s;
  out.y.resize(a.y.rows() + b.y.rows(), a.y.cols());
  out.y << a.y, b.y;
  return out;
}

PairSet augment(const RealMatrix& s, const RealMatrix& y, int factor, double noise_std, Rng& rng) {
  if (factor < 1) throw DomainError("augmentation factor must be >= 1");
  if (s.rows() != y.rows()) throw DimensionError("augment: unpaired rows");
  const Eigen::Index n = s.rows();
  PairSet out;
  out.s.resize(n * factor, s.cols());
  out.y.resize(n * factor, y.cols());
  std::normal_distribution<double> gauss(0.0, noise_std);
  for (int c = 0; c < factor; ++c) {
    out.s.middleRows(c * n, n) = s;
    out.y.middleRows(c * n, n) = y;
    if (c == 0 || noise_std == 0.0) continue;
    for (Eigen::Index r = c * n; r < (c + 1) * n; ++r) {
      for (Eigen::Index k = 0; k < s.cols(); ++k) out.s(r, k) += gauss(rng);
      for (Eigen::Index k = 0; k < y.cols(); ++k) out.y(r, k) += gauss(rng);
    }
  }
  return out;
}

}  // namespace mimogan::detectors

#include "mimogan/link/pa.hpp"

#include <cmath>

namespace mimogan::link {

cplx pa_apply(cplx s, const PACoeffs& c, PaModel model) {
  cplx out{0.0, 0.0};
  if (model == PaModel::polynomial) {
    const cplx s2 = s * s;
    cplx power = s;
    for (double a : c.odd) {
      out += a * power;
      power *= s2;
    }
  } else {
    const double mag2 = std::norm(s);
    double gain = 1.0;
    for (double a : c.odd) {
      out += a * gain * s;
      gain *= mag2;
    }
  }
  return out;
}

ComplexFrame pa_apply(const ComplexFrame& x, const PACoeffs& c, PaModel model) {
  return x.unaryExpr([&](const cplx& s) { return pa_apply(s, c, model); });
}

}  // namespace mimogan::link

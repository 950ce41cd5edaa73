#pragma once

#include <vector>

#include "mimogan/common/types.hpp"

namespace mimogan::link {

// Odd-order coefficients a_1, a_3, ..., a_{2N-1}.
struct PACoeffs {
  std::vector<double> odd{1.0};

  static PACoeffs paper_default() { return {{1.0, -1.5, -0.3}}; }
};

enum class PaModel {
  polynomial,  // g(s) = sum a_{2i-1} s^{2i-1}, complex powers
  amplitude,   // g(s) = sum a_{2i-1} s |s|^{2(i-1)}, phase preserving
};

cplx pa_apply(cplx s, const PACoeffs& c, PaModel model = PaModel::polynomial);
ComplexFrame pa_apply(const ComplexFrame& x, const PACoeffs& c, PaModel model = PaModel::polynomial);

}  // namespace mimogan::link

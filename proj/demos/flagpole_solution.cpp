// Transports the flagpole column (1,0,0,1) along x^1 with a constant
// connection and compares against exp(+-imz) on the chiral halves.

#include <cstdio>

#include "polarspinor/polarspinor.hpp"

using namespace polarspinor;

int main() {
  const double m = 1.0;
  Rank3 r;
  r.set_antisymmetric(2, 1, 1, -2 * m);
  const auto conn = constant_connection(Vec4::Zero(), r);
  const Spinor start(1, 0, 0, 1);

  std::printf("%6s  %12s  %12s  %10s  %s\n", "z", "Re psi_0", "Im psi_0", "|Fpsi|", "class");
  const Matrix4c f = flagpole_dirac_matrix(contract_R(r), m);
  for (int k = 0; k <= 8; ++k) {
    const double z = 0.25 * std::numbers::pi * k / 2.0;
    const auto res = expand(start, Path{Point::Zero(), Point(0, z, 0, 0), 16}, conn);
    std::printf("%6.3f  %12.8f  %12.8f  %10.3e  %s\n", z, res.spinor(0).real(), res.spinor(0).imag(),
                (f * res.spinor).norm(), to_string(classify(res.spinor).label).c_str());
  }
  return 0;
}

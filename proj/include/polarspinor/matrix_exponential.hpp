#pragma once

#include <cmath>

#include "core.hpp"

namespace polarspinor {

namespace detail {

// Degree-13 diagonal Pade coefficients and the matching 1-norm bound.
inline constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
inline constexpr double kTheta13 = 5.371920351148152;

inline double norm1(const Matrix4c& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace detail

/// Exponential of a dense 4x4 complex matrix by scaling and squaring.
///
/// The argument is scaled by 2^-s so that its 1-norm is below theta_13, the
/// [13/13] Pade approximant is evaluated, and the result squared s times.
/// Throws NumericalError if the input is non-finite or the result overflows.
inline Matrix4c matrix_exponential(const Matrix4c& m) {
  if (!m.allFinite()) throw NumericalError("matrix_exponential: non-finite input");

  const double nrm = detail::norm1(m);
  if (nrm == 0.0) return Matrix4c::Identity();
  int squarings = 0;
  if (nrm > detail::kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / detail::kTheta13)));
  }
  const Matrix4c a = m * std::ldexp(1.0, -squarings);
  const Matrix4c id = Matrix4c::Identity();
  const Matrix4c a2 = a * a;
  const Matrix4c a4 = a2 * a2;
  const Matrix4c a6 = a4 * a2;
  const auto& b = detail::kPade13;

  const Matrix4c u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                           b[5] * a4 + b[3] * a2 + b[1] * id;
  const Matrix4c u = a * u_inner;
  const Matrix4c v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                     b[2] * a2 + b[0] * id;

  Matrix4c r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;

  if (!r.allFinite()) {
    throw NumericalError("matrix_exponential: result overflows double precision (norm " +
                         std::to_string(nrm) + ")");
  }
  return r;
}

}  // namespace polarspinor

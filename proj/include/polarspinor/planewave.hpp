#pragma once

#include <string>

#include "connection.hpp"

namespace polarspinor {

/// Straight segment x(t) = start + t (end - start), t in [0, 1].
struct Path {
  Point start = Point::Zero();
  Point end = Point::Zero();
  int steps = 1;

  Vec4 displacement() const { return end - start; }
  Point at(double t) const { return start + t * (end - start); }
};

struct ExpansionResult {
  Spinor spinor = Spinor::Zero();
  int step_count = 0;
  std::string ordering = "left-ordered product";
};

/// -(i P_mu 1 + 1/2 sigma^{ij} R_{ij mu}) dx^mu at one point.
inline Matrix4c expansion_generator(const Vec4& p, const Rank3& r, const Vec4& dx) {
  Matrix4c k = Matrix4c::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    if (dx(mu) == 0.0) continue;
    k -= dx(mu) * (kI * p(mu) * Matrix4c::Identity() + 0.5 * sigma_contraction(r, mu));
  }
  return k;
}

/// Product integral of the connection along the path applied to psi0.
///
/// Each of the `steps` equal sub-segments contributes exp(generator at its
/// midpoint); later segments multiply from the left. For an integrand that
/// commutes along the path this is the ordinary exponential of the integral.
inline ExpansionResult expand(const Spinor& psi0, const Path& path, const ConnectionField& conn) {
  if (path.steps < 1) throw InputError("expand: path needs at least one step");
  if (!is_finite(psi0) || !path.start.allFinite() || !path.end.allFinite())
    throw InputError("expand: non-finite input");
  const Vec4 dx = path.displacement() / static_cast<double>(path.steps);
  Spinor psi = psi0;
  for (int k = 0; k < path.steps; ++k) {
    const Point mid = path.at((k + 0.5) / path.steps);
    const Vec4 p = conn.P(mid);
    const Rank3 r = conn.R(mid);
    if (!p.allFinite() || !r.all_finite())
      throw NumericalError("expand: non-finite connection sample");
    psi = matrix_exponential(expansion_generator(p, r, dx)) * psi;
  }
  return {psi, path.steps, "left-ordered product"};
}

/// Projections onto the two pi-eigenspaces (left: pi = -1, upper block).
struct ChiralParts {
  Eigen::Vector2cd left = Eigen::Vector2cd::Zero();
  Eigen::Vector2cd right = Eigen::Vector2cd::Zero();

  Spinor left_spinor() const { return Spinor(left(0), left(1), 0.0, 0.0); }
  Spinor right_spinor() const { return Spinor(0.0, 0.0, right(0), right(1)); }
};

inline ChiralParts chiral_split(const Spinor& psi) {
  ChiralParts c;
  c.left = psi.head<2>();
  c.right = psi.tail<2>();
  return c;
}

/// Complex coefficient of each chiral part relative to a reference spinor:
/// psi_L = c_L ref_L and psi_R = c_R ref_R in the least-squares sense. A
/// chiral half absent from the reference yields 0.
inline std::pair<Complex, Complex> chiral_coefficients(const Spinor& psi, const Spinor& reference) {
  const ChiralParts p = chiral_split(psi);
  const ChiralParts r = chiral_split(reference);
  auto coeff = [](const Eigen::Vector2cd& x, const Eigen::Vector2cd& ref) {
    const double n = ref.squaredNorm();
    return n > 0.0 ? ref.dot(x) / n : Complex(0.0);
  };
  return {coeff(p.left, r.left), coeff(p.right, r.right)};
}

/// Max-norm difference between the central-difference derivative of the
/// expanded field along the path and -(i P_mu + 1/2 R_{ij mu} sigma^{ij}) t^mu psi
/// at the path midpoint, where t is the unit-parameter tangent.
inline double verify_expansion(const Spinor& psi0, const Path& path, const ConnectionField& conn,
                               double h = kDefaultFdStep) {
  if (!(h > 0.0)) throw InputError("verify_expansion: step must be positive");
  const Vec4 disp = path.displacement();
  const double length = disp.norm();
  if (!(length > 0.0)) throw InputError("verify_expansion: degenerate path");
  const Vec4 tangent = disp / length;
  const Point mid = path.at(0.5);

  auto field = [&](const Point& x) {
    return expand(psi0, Path{path.start, x, path.steps}, conn).spinor;
  };
  const Spinor center = field(mid);
  const Spinor forward = field(mid + h * tangent);
  const Spinor backward = field(mid - h * tangent);
  const Spinor fd = (forward - backward) / (2.0 * h);
  const Spinor rhs = expansion_generator(conn.P(mid), conn.R(mid), tangent) * center;
  return (fd - rhs).cwiseAbs().maxCoeff();
}

}  // namespace polarspinor

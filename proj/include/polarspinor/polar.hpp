#pragma once

#include <numbers>

#include "lounesto.hpp"

namespace polarspinor {

/// Rest-frame columns of the two polar forms.
inline Spinor regular_reference() { return Spinor(1.0, 0.0, 1.0, 0.0); }
inline Spinor singular_reference() { return Spinor(1.0, 0.0, 0.0, 1.0); }

/// exp(-i/2 beta pi) = cos(beta/2) 1 - i sin(beta/2) pi.
inline Matrix4c chiral_rotation(double beta) {
  return std::cos(0.5 * beta) * Matrix4c::Identity() -
         kI * std::sin(0.5 * beta) * gamma_basis().pi;
}

/// (1 cos(alpha/2) - pi sin(alpha/2)) / sqrt(2).
inline Matrix4c singular_prefactor(double alpha) {
  return (std::cos(0.5 * alpha) * Matrix4c::Identity() -
          std::sin(0.5 * alpha) * gamma_basis().pi) /
         std::numbers::sqrt2;
}

/// Frame matrix L^-1 = e^{i phase} B(rapidity) R(rotation): the rotation acts
/// first on the rest-frame column, then the boost.
inline Matrix4c frame_matrix(const Vec3& rapidity, const Vec3& rotation_vector, double phase) {
  return std::exp(kI * phase) * boost(rapidity).matrix * rotation(rotation_vector).matrix;
}

struct PolarRegular {
  double phi = 1.0;
  double beta = 0.0;
  Vec3 rapidity = Vec3::Zero();
  Vec3 rotation = Vec3::Zero();
  double phase = 0.0;
  Matrix4c L_matrix = Matrix4c::Identity();  // L^-1

  /// Normalized velocity u = U / (2 phi^2).
  Vec4 velocity() const { return lorentz_matrix(L_matrix) * Vec4(1, 0, 0, 0); }
  /// Normalized spin axis s = S / (2 phi^2).
  Vec4 spin_axis() const { return lorentz_matrix(L_matrix) * Vec4(0, 0, 0, 1); }
};

inline PolarRegular make_polar_regular(double phi, double beta, const Vec3& rapidity = Vec3::Zero(),
                                       const Vec3& rotation_vector = Vec3::Zero(),
                                       double phase = 0.0) {
  PolarRegular p;
  p.phi = phi;
  p.beta = beta;
  p.rapidity = rapidity;
  p.rotation = rotation_vector;
  p.phase = phase;
  p.L_matrix = frame_matrix(rapidity, rotation_vector, phase);
  return p;
}

inline Spinor reconstruct_regular(const PolarRegular& p) {
  return p.phi * chiral_rotation(p.beta) * p.L_matrix * regular_reference();
}

namespace detail {

/// Rotation vector taking the third axis onto the unit vector n. Parallel n
/// gives the identity; antiparallel n is reached by a half turn about axis 1.
inline Vec3 rotation_from_third_axis(const Vec3& n) {
  const Vec3 e3(0, 0, 1);
  const Vec3 axis = e3.cross(n);
  const double sin_angle = axis.norm();
  const double cos_angle = n.dot(e3);
  if (sin_angle < 1e-14) {
    if (cos_angle > 0.0) return Vec3::Zero();
    return Vec3(std::numbers::pi, 0.0, 0.0);
  }
  return axis / sin_angle * std::atan2(sin_angle, cos_angle);
}

inline double wrap_beta(double beta) {
  // atan2 may return -pi; the branch is (-pi, pi].
  return beta <= -std::numbers::pi ? beta + 2.0 * std::numbers::pi : beta;
}

}  // namespace detail

/// Polar decomposition of a regular spinor, boost-then-rotate canonical form.
inline PolarRegular decompose_regular(const Spinor& psi, double tol = kDefaultClassTolerance) {
  const Bilinears b = compute_bilinears(psi);
  const LounestoClass cls = classify(b, tol);
  if (!is_regular(cls.label))
    throw InputError("decompose_regular: spinor is " + to_string(cls.label) + ", not regular");

  const double scale = std::hypot(b.Phi, b.Theta);  // 2 phi^2
  PolarRegular p;
  p.phi = std::sqrt(0.5 * scale);
  p.beta = detail::wrap_beta(std::atan2(b.Theta, b.Phi));

  const Vec4 u = b.U / scale;
  const Vec4 s = b.S / scale;

  const Vec3 u_space = u.tail<3>();
  const double u_space_norm = u_space.norm();
  if (u_space_norm > 0.0) {
    // asinh of |u_space| is better conditioned than acosh(u^0) near rest.
    p.rapidity = u_space / u_space_norm * std::asinh(u_space_norm);
  }
  const SpinorTransformation b_frame = boost(p.rapidity);
  const Vec4 s_rest = lorentz_matrix(b_frame.inverse()) * s;
  Vec3 axis = s_rest.tail<3>();
  const double axis_norm = axis.norm();
  if (!(axis_norm > 0.0)) throw NumericalError("decompose_regular: degenerate spin axis");
  axis /= axis_norm;
  p.rotation = detail::rotation_from_third_axis(axis);

  const Matrix4c frame = frame_matrix(p.rapidity, p.rotation, 0.0);
  const Spinor trial = p.phi * chiral_rotation(p.beta) * frame * regular_reference();
  p.phase = std::arg(trial.dot(psi));
  p.L_matrix = std::exp(kI * p.phase) * frame;
  return p;
}

/// Which of the two angles compatible with sin(alpha) the record carries.
enum class AlphaBranch { Principal, Supplementary };

struct PolarSingular {
  double sin_alpha = 0.0;
  double alpha = 0.0;  // alpha in [-pi/2, pi/2] for Principal, pi - that for Supplementary
  AlphaBranch alpha_branch = AlphaBranch::Principal;
  double boost_rapidity = 0.0;  // along the third axis
  Vec3 rotation = Vec3::Zero();
  double phase = 0.0;
  Matrix4c L_matrix = Matrix4c::Identity();  // L^-1

  /// Same spinor described with the other alpha branch. Switching branches
  /// composes the frame with diag(1,-1,1,-1) (a half turn about axis 3 times
  /// a gauge phase) so the reconstruction is unchanged.
  PolarSingular with_branch(AlphaBranch branch) const {
    if (branch == alpha_branch) return *this;
    PolarSingular q = *this;
    q.alpha_branch = branch;
    q.alpha = std::numbers::pi - alpha;
    Matrix4c flip = Matrix4c::Zero();
    flip.diagonal() << 1.0, -1.0, 1.0, -1.0;
    q.L_matrix = L_matrix * flip;
    return q;
  }
};

inline PolarSingular make_polar_singular(double alpha, double boost_rapidity = 0.0,
                                         const Vec3& rotation_vector = Vec3::Zero(),
                                         double phase = 0.0) {
  PolarSingular p;
  p.alpha = alpha;
  p.sin_alpha = std::sin(alpha);
  p.boost_rapidity = boost_rapidity;
  p.rotation = rotation_vector;
  p.phase = phase;
  p.L_matrix = std::exp(kI * phase) * rotation(rotation_vector).matrix *
               boost(Vec3(0, 0, boost_rapidity)).matrix;
  return p;
}

inline Spinor reconstruct_singular(const PolarSingular& p, double alpha) {
  return singular_prefactor(alpha) * p.L_matrix * singular_reference();
}

inline Spinor reconstruct_singular(const PolarSingular& p) {
  return reconstruct_singular(p, p.alpha);
}

namespace detail {

/// Rotation vector of W = exp(-i omega.sigma/2) in SU(2).
inline Vec3 su2_rotation_vector(const Eigen::Matrix2cd& w) {
  const double c = w(0, 0).real();
  const Vec3 sn(-w(1, 0).imag(), w(1, 0).real(), -w(0, 0).imag());
  const double s = sn.norm();
  if (s < 1e-300) return Vec3::Zero();
  const double angle = 2.0 * std::atan2(s, c);
  return sn / s * angle;
}

}  // namespace detail

/// Polar decomposition of a singular (flag-dipole, flagpole or dipole) spinor.
///
/// The chiral halves are lambda_L = k_L e^{i phase} a and
/// lambda_R = k_R e^{i phase} eps a^*, with k_L = sin(alpha/2 + pi/4),
/// k_R = cos(alpha/2 + pi/4) and a the first column of the SL(2,C) block of
/// the frame. The null-rotation freedom in the second column is fixed by
/// taking the frame block as W diag(r, 1/r) with W in SU(2).
inline PolarSingular decompose_singular(const Spinor& lambda, double tol = kDefaultClassTolerance) {
  const Bilinears b = compute_bilinears(lambda);
  const LounestoClass cls = classify(b, tol);
  if (!is_singular(cls.label))
    throw InputError("decompose_singular: spinor is " + to_string(cls.label) + ", not singular");

  const Eigen::Vector2cd v = lambda.head<2>();
  const Eigen::Vector2cd w = lambda.tail<2>();
  const double vn = v.norm();
  const double wn = w.norm();
  const double total = std::hypot(vn, wn);

  PolarSingular p;
  p.sin_alpha = std::clamp(-b.S(0) / b.U(0), -1.0, 1.0);
  p.alpha = 2.0 * std::atan2(vn, wn) - 0.5 * std::numbers::pi;
  const double k_left = vn / total;
  const double k_right = wn / total;

  auto eps_conj = [](const Eigen::Vector2cd& x) {
    return Eigen::Vector2cd(-std::conj(x(1)), std::conj(x(0)));
  };

  Eigen::Vector2cd a;
  if (vn > 0.0) {
    if (wn > 0.0) {
      const Complex kappa = eps_conj(v).dot(w) / (vn * vn);
      p.phase = 0.5 * std::arg(kappa);
    }
    a = v * std::exp(-kI * p.phase) / k_left;
  } else {
    // lambda_R = k_R eps a^*  =>  a = conj(-eps lambda_R) / k_R
    a = Eigen::Vector2cd(std::conj(w(1)), -std::conj(w(0))) / k_right;
  }

  const double r = a.norm();
  const Eigen::Vector2cd a_hat = a / r;
  Eigen::Matrix2cd su2;
  su2 << a_hat(0), -std::conj(a_hat(1)), a_hat(1), std::conj(a_hat(0));
  p.boost_rapidity = -2.0 * std::log(r);
  p.rotation = detail::su2_rotation_vector(su2);
  p.L_matrix = std::exp(kI * p.phase) * rotation(p.rotation).matrix *
               boost(Vec3(0, 0, p.boost_rapidity)).matrix;
  return p;
}

}  // namespace polarspinor

#pragma once

#include <array>
#include <string>

#include "core.hpp"
#include "matrix_exponential.hpp"

namespace polarspinor {

using Vec3 = Eigen::Vector3d;

/// Index pairs (a<b) used to flatten antisymmetric parameters such as theta_ab.
inline constexpr std::array<std::array<int, 2>, 6> kAntisymmetricPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Totally antisymmetric symbol with lowered indices. eps(0,1,2,3) is fixed
/// at construction of the basis by calibration against the pi matrix.
class LeviCivita {
 public:
  explicit LeviCivita(double sign_0123 = 1.0) : sign_(sign_0123) {}

  double operator()(int a, int b, int c, int d) const {
    if (a == b || a == c || a == d || b == c || b == d || c == d) return 0.0;
    int p[4] = {a, b, c, d};
    int parity = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++parity;
    return (parity % 2 == 0) ? sign_ : -sign_;
  }

  /// Same symbol with all four indices raised by eta (overall factor -1).
  double upper(int a, int b, int c, int d) const { return -(*this)(a, b, c, d); }

  double sign_0123() const { return sign_; }

 private:
  double sign_;
};

/// Fixed chiral-representation Clifford basis, signature (+,-,-,-).
///
/// gamma^0 = [[0,1],[1,0]], gamma^k = [[0,s_k],[-s_k,0]] in 2x2 blocks,
/// pi = i g0 g1 g2 g3 = diag(-1,-1,+1,+1) so the upper (left-handed) block
/// carries eigenvalue -1, and sigma^{ab} = [g^a, g^b] / 4.
struct GammaBasis {
  std::array<Matrix4c, 4> gamma;
  Matrix4c pi;
  std::array<std::array<Matrix4c, 4>, 4> sigma;
  Tensor2 eta;
  LeviCivita epsilon;

  double metric(int a) const { return eta(a, a); }
  Matrix4c gamma_lower(int a) const { return metric(a) * gamma[a]; }
  Matrix4c sigma_lower(int a, int b) const { return metric(a) * metric(b) * sigma[a][b]; }
};

/// Per-invariant worst entrywise residuals of a GammaBasis.
struct GammaInvariantReport {
  double anticommutator = 0.0;      // {g^a, g^b} - 2 eta^{ab}
  double pi_duality = 0.0;          // 2i sigma_ab pi - eps_abcd sigma^cd
  double pi_square = 0.0;           // pi^2 - 1
  double pi_anticommutes = 0.0;     // {pi, g^a}
  double dirac_adjoint = 0.0;       // g0 (g^a)^dagger g0 - g^a
  double commutator = 0.0;          // [g^a, g^b] - 4 sigma^{ab}

  double worst() const {
    return std::max({anticommutator, pi_duality, pi_square, pi_anticommutes, dirac_adjoint,
                     commutator});
  }
};

inline double max_entry(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

inline GammaInvariantReport check_invariants(const GammaBasis& g) {
  GammaInvariantReport rep;
  const Matrix4c id = Matrix4c::Identity();
  for (int a = 0; a < 4; ++a) {
    rep.pi_anticommutes =
        std::max(rep.pi_anticommutes, max_entry(g.pi * g.gamma[a] + g.gamma[a] * g.pi));
    rep.dirac_adjoint = std::max(
        rep.dirac_adjoint, max_entry(g.gamma[0] * g.gamma[a].adjoint() * g.gamma[0] - g.gamma[a]));
    for (int b = 0; b < 4; ++b) {
      rep.anticommutator =
          std::max(rep.anticommutator, max_entry(g.gamma[a] * g.gamma[b] + g.gamma[b] * g.gamma[a] -
                                                 2.0 * g.eta(a, b) * id));
      rep.commutator = std::max(rep.commutator, max_entry(g.gamma[a] * g.gamma[b] -
                                                          g.gamma[b] * g.gamma[a] -
                                                          4.0 * g.sigma[a][b]));
      Matrix4c rhs = Matrix4c::Zero();
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) rhs += g.epsilon(a, b, c, d) * g.sigma[c][d];
      rep.pi_duality =
          std::max(rep.pi_duality, max_entry(2.0 * kI * g.sigma_lower(a, b) * g.pi - rhs));
    }
  }
  rep.pi_square = max_entry(g.pi * g.pi - id);
  return rep;
}

inline constexpr double kBasisTolerance = 1e-14;

/// Builds the basis and calibrates the sign of eps_0123 so that
/// 2i sigma_ab pi = eps_abcd sigma^cd. Throws ConsistencyError if any
/// invariant misses kBasisTolerance for both signs.
inline GammaBasis build_gamma_basis() {
  using M2 = Eigen::Matrix2cd;
  const M2 i2 = M2::Identity();
  const M2 z2 = M2::Zero();
  std::array<M2, 3> pauli;
  pauli[0] << 0, 1, 1, 0;
  pauli[1] << 0, -kI, kI, 0;
  pauli[2] << 1, 0, 0, -1;

  GammaBasis g;
  g.gamma[0] << z2, i2, i2, z2;
  for (int k = 0; k < 3; ++k) g.gamma[k + 1] << z2, pauli[k], -pauli[k], z2;
  g.pi = Matrix4c::Zero();
  g.pi.diagonal() << -1.0, -1.0, 1.0, 1.0;
  g.eta = Tensor2::Zero();
  g.eta.diagonal() << 1.0, -1.0, -1.0, -1.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      g.sigma[a][b] = 0.25 * (g.gamma[a] * g.gamma[b] - g.gamma[b] * g.gamma[a]);

  for (double sign : {1.0, -1.0}) {
    g.epsilon = LeviCivita(sign);
    const auto rep = check_invariants(g);
    if (rep.worst() <= kBasisTolerance) return g;
  }
  throw ConsistencyError("build_gamma_basis: no epsilon sign satisfies the Clifford invariants");
}

/// Process-wide immutable basis.
inline const GammaBasis& gamma_basis() {
  static const GammaBasis basis = build_gamma_basis();
  return basis;
}

/// Human-readable description of the fixed conventions, embedded in reports.
struct ConventionInfo {
  std::string representation = "chiral (Weyl)";
  std::string signature = "(+,-,-,-)";
  double epsilon_0123 = 0.0;
  std::array<int, 4> pi_diagonal{};
};

inline ConventionInfo conventions() {
  const auto& g = gamma_basis();
  ConventionInfo info;
  info.epsilon_0123 = g.epsilon(0, 1, 2, 3);
  for (int k = 0; k < 4; ++k) info.pi_diagonal[k] = static_cast<int>(std::lround(g.pi(k, k).real()));
  return info;
}

/// exp(1/2 theta_ab sigma^ab + i q theta) and its parameters.
struct SpinorTransformation {
  Matrix4c matrix = Matrix4c::Identity();
  std::array<double, 6> theta_ab{};  // (01, 02, 03, 12, 13, 23), lowered indices
  double theta = 0.0;
  double q = 0.0;

  Matrix4c inverse() const { return matrix.inverse(); }
  Spinor apply(const Spinor& psi) const { return matrix * psi; }
};

/// Generator 1/2 theta_ab sigma^ab + i q theta 1 (theta_ab antisymmetric, so the
/// sum over ordered pairs a<b carries no factor 1/2).
inline Matrix4c transformation_generator(const std::array<double, 6>& theta_ab, double theta,
                                         double q) {
  const auto& g = gamma_basis();
  Matrix4c gen = kI * (q * theta) * Matrix4c::Identity();
  for (std::size_t k = 0; k < kAntisymmetricPairs.size(); ++k) {
    const auto [a, b] = kAntisymmetricPairs[k];
    gen += theta_ab[k] * g.sigma[a][b];
  }
  return gen;
}

inline SpinorTransformation spinor_transformation(const std::array<double, 6>& theta_ab,
                                                  double theta = 0.0, double q = 0.0) {
  for (double v : theta_ab)
    if (!std::isfinite(v)) throw InputError("spinor_transformation: non-finite parameter");
  if (!std::isfinite(theta) || !std::isfinite(q))
    throw InputError("spinor_transformation: non-finite parameter");
  SpinorTransformation t;
  t.theta_ab = theta_ab;
  t.theta = theta;
  t.q = q;
  t.matrix = matrix_exponential(transformation_generator(theta_ab, theta, q));
  return t;
}

/// Pure boost; theta_0k = rapidity_k. A boost with rapidity eta along axis k
/// maps the rest-frame velocity to (cosh eta, sinh eta n).
inline SpinorTransformation boost(const Vec3& rapidity) {
  return spinor_transformation({rapidity(0), rapidity(1), rapidity(2), 0.0, 0.0, 0.0});
}

/// Pure rotation by |omega| about omega/|omega| (right-handed on vectors);
/// theta_ij = eps_ijk omega_k.
inline SpinorTransformation rotation(const Vec3& omega) {
  return spinor_transformation({0.0, 0.0, 0.0, omega(2), -omega(1), omega(0)});
}

inline SpinorTransformation gauge_phase(double theta, double q = 1.0) {
  return spinor_transformation({0, 0, 0, 0, 0, 0}, theta, q);
}

/// Real Lorentz matrix Lambda^a_b with S^-1 g^a S = Lambda^a_b g^b, so the
/// vector bilinears of S psi are Lambda times those of psi.
inline Tensor2 lorentz_matrix(const Matrix4c& s) {
  const auto& g = gamma_basis();
  const Matrix4c s_inv = s.inverse();
  Tensor2 lambda;
  double imag = 0.0;
  for (int a = 0; a < 4; ++a) {
    const Matrix4c conj = s_inv * g.gamma[a] * s;
    for (int b = 0; b < 4; ++b) {
      const Complex tr = (conj * g.gamma_lower(b)).trace() / 4.0;
      lambda(a, b) = tr.real();
      imag = std::max(imag, std::abs(tr.imag()));
    }
  }
  if (imag > 1e-9 * (1.0 + lambda.cwiseAbs().maxCoeff()))
    throw InputError("lorentz_matrix: argument is not a spinor transformation");
  return lambda;
}

}  // namespace polarspinor

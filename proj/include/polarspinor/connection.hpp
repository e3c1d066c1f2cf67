#pragma once

#include <memory>
#include <optional>

#include "lounesto.hpp"

namespace polarspinor {

using ScalarSampler = std::function<double(const Point&)>;
using VectorSampler = std::function<Vec4(const Point&)>;
using TensorSampler = std::function<Tensor2(const Point&)>;
using Rank3Sampler = std::function<Rank3(const Point&)>;

inline constexpr double kDefaultFdStep = 1e-4;

/// Central difference of f along coordinate mu.
template <typename F>
auto central_difference(const F& f, const Point& x, int mu, double h) {
  Point xp = x;
  Point xm = x;
  xp(mu) += h;
  xm(mu) -= h;
  return ((f(xp) - f(xm)) / (2.0 * h)).eval();
}

inline Vec4 gradient(const ScalarSampler& f, const Point& x, double h) {
  Vec4 g;
  for (int mu = 0; mu < 4; ++mu) {
    Point xp = x;
    Point xm = x;
    xp(mu) += h;
    xm(mu) -= h;
    g(mu) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

/// Tensorial connections: momentum P_mu and R_{ij mu}, all indices lowered.
struct ConnectionField {
  VectorSampler P;
  Rank3Sampler R;
};

inline ConnectionField zero_connection() {
  return {[](const Point&) { return Vec4::Zero().eval(); }, [](const Point&) { return Rank3{}; }};
}

inline ConnectionField constant_connection(const Vec4& p, const Rank3& r) {
  if (r.antisymmetry_defect() != 0.0)
    throw InputError("constant_connection: R must be antisymmetric in (i, j)");
  return {[p](const Point&) { return p; }, [r](const Point&) { return r; }};
}

/// P(x) = P0 + dP x and R(x) = R0 + sum_nu dR[nu] x^nu, where dP(mu, nu) is
/// d P_mu / d x^nu.
inline ConnectionField linear_connection(const Vec4& p0, const Rank3& r0, const Tensor2& dp,
                                         const std::array<Rank3, 4>& dr) {
  if (r0.antisymmetry_defect() != 0.0)
    throw InputError("linear_connection: R must be antisymmetric in (i, j)");
  for (const auto& d : dr)
    if (d.antisymmetry_defect() != 0.0)
      throw InputError("linear_connection: R gradient must be antisymmetric in (i, j)");
  return {[p0, dp](const Point& x) { return (p0 + dp * x).eval(); },
          [r0, dr](const Point& x) {
            Rank3 r = r0;
            for (int nu = 0; nu < 4; ++nu) r += x(nu) * dr[nu];
            return r;
          }};
}

/// Raw gauge inputs: spin connection C_{ij mu}, potential A_mu, the scalar xi
/// and antisymmetric xi_{ab} appearing in L^-1 dL = 1/2 dxi^{ab} sigma_ab + iq dxi.
/// The optional gradient samplers replace finite differences when present.
struct GaugeData {
  Rank3Sampler C = [](const Point&) { return Rank3{}; };
  VectorSampler A = [](const Point&) { return Vec4::Zero().eval(); };
  ScalarSampler xi = [](const Point&) { return 0.0; };
  TensorSampler xi_ab = [](const Point&) { return Tensor2::Zero().eval(); };
  double q = 0.0;
  std::optional<VectorSampler> xi_gradient;
  std::optional<Rank3Sampler> xi_ab_gradient;  // (i, j, mu) = d_mu xi_ij
};

inline Rank3 xi_ab_derivative(const GaugeData& g, const Point& x, double h) {
  if (g.xi_ab_gradient) return (*g.xi_ab_gradient)(x);
  Rank3 d;
  for (int mu = 0; mu < 4; ++mu) {
    const Tensor2 dx = central_difference(g.xi_ab, x, mu, h);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) d(i, j, mu) = dx(i, j);
  }
  return d;
}

inline Vec4 xi_derivative(const GaugeData& g, const Point& x, double h) {
  if (g.xi_gradient) return (*g.xi_gradient)(x);
  return gradient(g.xi, x, h);
}

/// P_mu = q(d_mu xi - A_mu) and R_{ij mu} = d_mu xi_ij - C_{ij mu}.
inline ConnectionField build_tensorial(GaugeData g, double h = kDefaultFdStep) {
  if (!(h > 0.0)) throw InputError("build_tensorial: derivative step must be positive");
  auto gauge = std::make_shared<const GaugeData>(std::move(g));
  ConnectionField f;
  f.P = [gauge, h](const Point& x) {
    const Vec4 p = gauge->q * (xi_derivative(*gauge, x, h) - gauge->A(x));
    if (!p.allFinite()) throw NumericalError("build_tensorial: non-finite P sample");
    return p;
  };
  f.R = [gauge, h](const Point& x) {
    Rank3 r = xi_ab_derivative(*gauge, x, h) - gauge->C(x);
    if (!r.all_finite()) throw NumericalError("build_tensorial: non-finite R sample");
    return r;
  };
  return f;
}

/// R_mu = R_{mu nu sigma} g^{nu sigma} and B_mu = 1/2 eps_{mu a b c} R^{abc}.
struct ContractionPair {
  Vec4 R_mu = Vec4::Zero();
  Vec4 B_mu = Vec4::Zero();
};

inline ContractionPair contract_R(const Rank3& r) {
  const auto& g = gamma_basis();
  ContractionPair c;
  for (int mu = 0; mu < 4; ++mu) {
    double trace = 0.0;
    for (int nu = 0; nu < 4; ++nu) trace += r(mu, nu, nu) * g.metric(nu);
    c.R_mu(mu) = trace;
    double dual = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int cc = 0; cc < 4; ++cc) {
          const double e = g.epsilon(mu, a, b, cc);
          if (e != 0.0) dual += e * g.metric(a) * g.metric(b) * g.metric(cc) * r(a, b, cc);
        }
    c.B_mu(mu) = 0.5 * dual;
  }
  return c;
}

/// R_{ij mu} sigma^{ij}, summed over all ordered (i, j).
inline Matrix4c sigma_contraction(const Rank3& r, int mu) {
  const auto& g = gamma_basis();
  Matrix4c m = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) m += r(i, j, mu) * g.sigma[i][j];
  return m;
}

/// Point data feeding the polar covariant derivative. Only the members
/// relevant to the class are read.
struct PolarPointData {
  Vec4 grad_log_phi = Vec4::Zero();
  Vec4 grad_beta = Vec4::Zero();
  double alpha = 0.0;
  Vec4 grad_alpha = Vec4::Zero();
  Vec4 P = Vec4::Zero();
  Rank3 R;
};

using DerivativeMatrices = std::array<Matrix4c, 4>;

inline constexpr double kFlagpoleMomentumTolerance = 1e-12;

/// Matrices D_mu with nabla_mu psi = D_mu psi for the given class.
inline DerivativeMatrices polar_derivative_matrix(LounestoLabel label, const PolarPointData& d) {
  const auto& g = gamma_basis();
  const Matrix4c id = Matrix4c::Identity();
  DerivativeMatrices out;

  if (label == LounestoLabel::Flagpole && d.P.cwiseAbs().maxCoeff() > kFlagpoleMomentumTolerance)
    throw InputError("polar_derivative_matrix: flagpoles carry P_mu = 0");

  double tan_a = 0.0;
  double sec_a = 0.0;
  if (label == LounestoLabel::FlagDipole) {
    const double c = std::cos(d.alpha);
    if (std::abs(c) < 1e-12)
      throw InputError("polar_derivative_matrix: cos(alpha) = 0; use the dipole form");
    tan_a = std::tan(d.alpha);
    sec_a = 1.0 / c;
  }

  for (int mu = 0; mu < 4; ++mu) {
    Matrix4c m = -0.5 * sigma_contraction(d.R, mu);
    if (label != LounestoLabel::Flagpole) m -= kI * d.P(mu) * id;
    if (is_regular(label)) {
      m += -0.5 * kI * d.grad_beta(mu) * g.pi + d.grad_log_phi(mu) * id;
    } else if (label == LounestoLabel::FlagDipole) {
      m += -0.5 * tan_a * d.grad_alpha(mu) * id - 0.5 * sec_a * d.grad_alpha(mu) * g.pi;
    }
    out[mu] = m;
  }
  return out;
}

}  // namespace polarspinor

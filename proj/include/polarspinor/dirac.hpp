#pragma once

#include <string>
#include <vector>

#include "connection.hpp"
#include "polar.hpp"

namespace polarspinor {

using SpinorField = std::function<Spinor(const Point&)>;

/// Value of i g^mu nabla_mu psi - m psi at one point.
struct DiracResidual {
  Spinor residual = Spinor::Zero();
  double norm = 0.0;
};

inline DiracResidual make_residual(const Spinor& r) { return {r, r.norm()}; }

/// Residual from covariant derivatives already evaluated at the point.
inline DiracResidual dirac_residual(const Spinor& psi, const std::array<Spinor, 4>& nabla,
                                    double m) {
  const auto& g = gamma_basis();
  Spinor r = -m * psi;
  for (int mu = 0; mu < 4; ++mu) r += kI * (g.gamma[mu] * nabla[mu]);
  return make_residual(r);
}

/// Residual with polar-form derivatives nabla_mu psi = D_mu psi.
inline DiracResidual dirac_residual(const Spinor& psi, const DerivativeMatrices& d, double m) {
  std::array<Spinor, 4> nabla;
  for (int mu = 0; mu < 4; ++mu) nabla[mu] = d[mu] * psi;
  return dirac_residual(psi, nabla, m);
}

/// Component-form residual of a field: nabla_mu psi = d_mu psi +
/// 1/2 C_{ij mu} sigma^{ij} psi + i q A_mu psi, with central differences of step h.
inline DiracResidual dirac_residual(const SpinorField& field, const Point& x, double m,
                                    const GaugeData& gauge, double h = kDefaultFdStep) {
  const Spinor psi = field(x);
  if (!is_finite(psi)) throw NumericalError("dirac_residual: non-finite field sample");
  const Rank3 c = gauge.C(x);
  const Vec4 a = gauge.A(x);
  std::array<Spinor, 4> nabla;
  for (int mu = 0; mu < 4; ++mu) {
    const Spinor d = central_difference(field, x, mu, h);
    if (!is_finite(d)) throw NumericalError("dirac_residual: non-finite field sample");
    nabla[mu] = d + 0.5 * (sigma_contraction(c, mu) * psi) + kI * (gauge.q * a(mu)) * psi;
  }
  return dirac_residual(psi, nabla, m);
}

/// i R_a g^a + B_a g^a pi - 2m, lowered R_a and B_a.
inline Matrix4c flagpole_dirac_matrix(const Vec4& r_mu, const Vec4& b_mu, double m) {
  const auto& g = gamma_basis();
  Matrix4c f = -2.0 * m * Matrix4c::Identity();
  for (int a = 0; a < 4; ++a) f += kI * r_mu(a) * g.gamma[a] + b_mu(a) * g.gamma[a] * g.pi;
  return f;
}

inline Matrix4c flagpole_dirac_matrix(const ContractionPair& c, double m) {
  return flagpole_dirac_matrix(c.R_mu, c.B_mu, m);
}

struct NamedResidual {
  std::string name;
  std::vector<double> values;

  double max_abs() const {
    double w = 0.0;
    for (double v : values) w = std::max(w, std::abs(v));
    return w;
  }
};

/// Left-hand sides of the polar Dirac system for one class at one point.
struct PolarResiduals {
  LounestoLabel label = LounestoLabel::RegularScalar;
  std::vector<NamedResidual> entries;

  double worst() const {
    double w = 0.0;
    for (const auto& e : entries) w = std::max(w, e.max_abs());
    return w;
  }
  const NamedResidual& at(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return e;
    throw InputError("PolarResiduals: no entry " + name);
  }
};

inline std::vector<double> to_vector(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }

inline std::vector<double> to_vector(const Tensor2& t) {
  std::vector<double> out;
  out.reserve(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out.push_back(t(a, b));
  return out;
}

/// Regular-class polar variables at a point; u and s carry upper indices.
struct RegularPolarPoint {
  double beta = 0.0;
  Vec4 grad_beta = Vec4::Zero();
  double phi = 1.0;
  Vec4 grad_phi = Vec4::Zero();
  Vec4 u = Vec4(1, 0, 0, 0);
  Vec4 s = Vec4(0, 0, 0, 1);
};

inline constexpr double kFrameNormalizationTolerance = 1e-8;

/// eq_beta_mu = d_mu beta + B_mu - 2 P^i u_[i s_mu] + 2 m s_mu cos(beta)
/// eq_phi_mu  = d_mu ln(phi^2) + R_mu - 2 P^r u^n s^a eps_{mu r n a} + 2 m s_mu sin(beta)
inline PolarResiduals regular_polar_residuals(const RegularPolarPoint& pt, const Vec4& p_mu,
                                              const Rank3& r, double m) {
  const auto& g = gamma_basis();
  const double uu = minkowski_dot(pt.u, pt.u);
  const double ss = minkowski_dot(pt.s, pt.s);
  const double us = minkowski_dot(pt.u, pt.s);
  if (std::abs(uu - 1.0) > kFrameNormalizationTolerance ||
      std::abs(ss + 1.0) > kFrameNormalizationTolerance || std::abs(us) > kFrameNormalizationTolerance)
    throw InputError("regular_polar_residuals: u, s violate u.u = 1 = -s.s, u.s = 0");
  if (!(pt.phi > 0.0)) throw InputError("regular_polar_residuals: phi must be positive");

  const ContractionPair c = contract_R(r);
  const Vec4 ul = lower(pt.u);
  const Vec4 sl = lower(pt.s);
  const Vec4 p_up = lower(p_mu);  // eta is its own inverse

  Vec4 eq_beta;
  Vec4 eq_phi;
  for (int mu = 0; mu < 4; ++mu) {
    const double p_us = p_up.dot(ul) * sl(mu) - p_up.dot(sl) * ul(mu);
    double p_eps = 0.0;
    for (int rho = 0; rho < 4; ++rho)
      for (int nu = 0; nu < 4; ++nu)
        for (int a = 0; a < 4; ++a) {
          const double e = g.epsilon(mu, rho, nu, a);
          if (e != 0.0) p_eps += e * p_up(rho) * pt.u(nu) * pt.s(a);
        }
    eq_beta(mu) = pt.grad_beta(mu) + c.B_mu(mu) - 2.0 * p_us + 2.0 * m * sl(mu) * std::cos(pt.beta);
    eq_phi(mu) = 2.0 * pt.grad_phi(mu) / pt.phi + c.R_mu(mu) - 2.0 * p_eps +
                 2.0 * m * sl(mu) * std::sin(pt.beta);
  }
  PolarResiduals out;
  out.label = LounestoLabel::RegularScalarPseudoscalar;
  if (std::abs(std::sin(pt.beta)) < 1e-15) {
    out.label = LounestoLabel::RegularScalar;
  } else if (std::abs(std::cos(pt.beta)) < 1e-15) {
    out.label = LounestoLabel::RegularPseudoscalar;
  }
  out.entries.push_back({"eq_beta", to_vector(eq_beta)});
  out.entries.push_back({"eq_phi", to_vector(eq_phi)});
  return out;
}

/// A scalar field with an optional analytic gradient.
struct ScalarField {
  ScalarSampler value;
  std::optional<VectorSampler> gradient;

  Vec4 grad(const Point& x, double h) const {
    return gradient ? (*gradient)(x) : polarspinor::gradient(value, x, h);
  }
};

struct RegularPolarFields {
  ScalarField beta;
  ScalarField phi;
  VectorSampler u;
  VectorSampler s;
};

inline PolarResiduals regular_polar_residuals(const RegularPolarFields& f,
                                              const ConnectionField& conn, double m,
                                              const Point& x, double h = kDefaultFdStep) {
  RegularPolarPoint pt;
  pt.beta = f.beta.value(x);
  pt.grad_beta = f.beta.grad(x, h);
  pt.phi = f.phi.value(x);
  pt.grad_phi = f.phi.grad(x, h);
  pt.u = f.u(x);
  pt.s = f.s(x);
  return regular_polar_residuals(pt, conn.P(x), conn.R(x), m);
}

/// Singular-class data at a point; U and M carry upper indices.
struct SingularPolarPoint {
  double alpha = 0.0;
  Vec4 grad_alpha = Vec4::Zero();
  Vec4 U = Vec4::Zero();
  Tensor2 M = Tensor2::Zero();
};

namespace detail {

// K_{mu rho nu} = -B^s eps_{s mu rho nu} + R_[mu g_rho]nu + g_nu[mu d_rho] alpha tan(alpha)
inline std::array<Tensor2, 4> singular_bracket(const ContractionPair& c, const Vec4& grad_alpha,
                                               double tan_alpha) {
  const auto& g = gamma_basis();
  const Vec4 b_up = lower(c.B_mu);
  std::array<Tensor2, 4> k;  // k[nu](mu, rho)
  for (int nu = 0; nu < 4; ++nu) {
    k[nu].setZero();
    for (int mu = 0; mu < 4; ++mu)
      for (int rho = 0; rho < 4; ++rho) {
        double v = 0.0;
        for (int s = 0; s < 4; ++s) v -= b_up(s) * g.epsilon(s, mu, rho, nu);
        v += c.R_mu(mu) * g.eta(rho, nu) - c.R_mu(rho) * g.eta(mu, nu);
        v += (g.eta(nu, mu) * grad_alpha(rho) - g.eta(nu, rho) * grad_alpha(mu)) * tan_alpha;
        k[nu](mu, rho) = v;
      }
  }
  return k;
}

}  // namespace detail

/// Polar Dirac system for singular spinors.
///
/// FlagDipole: the four tensor equations (cos(alpha) != 0 required).
/// Flagpole:   R_mu U^mu, B_mu U^mu, (-B_mu eps^{mu r a n} + g^{r[a} R^{n]}) U_r + 2m M^{an}.
/// Dipole:     R_mu U^mu, W_mu U^mu, (W_mu eps^{mu r a n} + g^{r[a} R^{n]}) U_r with
///             W = -B + 2P for the left-handed (sin alpha > 0) and -B - 2P for the
///             right-handed spinor; m is not used (dipoles are massless).
inline PolarResiduals singular_polar_residuals(LounestoLabel label, const SingularPolarPoint& pt,
                                               const Vec4& p_mu, const Rank3& r, double m) {
  if (is_regular(label)) throw InputError("singular_polar_residuals: regular class given");
  const auto& g = gamma_basis();
  const auto& eps = g.epsilon;
  const ContractionPair c = contract_R(r);
  const Vec4 u_low = lower(pt.U);
  const Vec4 r_up = lower(c.R_mu);
  const Tensor2 m_low = lower(pt.M);

  PolarResiduals out;
  out.label = label;

  if (label == LounestoLabel::FlagDipole) {
    const double cos_a = std::cos(pt.alpha);
    if (std::abs(cos_a) < 1e-12)
      throw InputError("singular_polar_residuals: sec(alpha) diverges; use the dipole system");
    const double sec_a = 1.0 / cos_a;
    const double tan_a = std::tan(pt.alpha);
    const Vec4 p_up = lower(p_mu);
    const Vec4 ga_up = lower(pt.grad_alpha);
    const auto k = detail::singular_bracket(c, pt.grad_alpha, tan_a);

    Vec4 e1 = Vec4::Zero();
    Vec4 e2 = Vec4::Zero();
    Vec4 e3 = Vec4::Zero();
    Vec4 e4 = Vec4::Zero();
    for (int nu = 0; nu < 4; ++nu) {
      for (int rho = 0; rho < 4; ++rho)
        for (int sg = 0; sg < 4; ++sg) {
          const double mrs = m_low(rho, sg);
          for (int mu = 0; mu < 4; ++mu) {
            e1(nu) += eps.upper(mu, rho, sg, nu) * pt.grad_alpha(mu) * sec_a * mrs;
            e3(nu) -= 2.0 * mrs * p_mu(mu) * eps.upper(mu, rho, sg, nu);
          }
          e1(nu) -= 2.0 * (p_up(rho) * g.eta(sg, nu) - p_up(sg) * g.eta(rho, nu)) * mrs;
          e3(nu) += mrs * (g.eta(nu, rho) * ga_up(sg) - g.eta(nu, sg) * ga_up(rho)) * sec_a;
        }
      e3(nu) += 4.0 * m * std::sin(pt.alpha) * pt.U(nu);
      for (int mu = 0; mu < 4; ++mu)
        for (int rho = 0; rho < 4; ++rho) {
          double dual = 0.0;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) dual += m_low(a, b) * eps.upper(mu, rho, a, b);
          e2(nu) += k[nu](mu, rho) * dual;
          e4(nu) += k[nu](mu, rho) * pt.M(mu, rho);
        }
      e4(nu) += 4.0 * m * u_low(nu);
    }
    out.entries.push_back({"eq_1", to_vector(e1)});
    out.entries.push_back({"eq_2", to_vector(e2)});
    out.entries.push_back({"eq_3", to_vector(e3)});
    out.entries.push_back({"eq_4", to_vector(e4)});
    return out;
  }

  Vec4 w_low;
  if (label == LounestoLabel::Flagpole) {
    w_low = -c.B_mu;
  } else {
    const double sgn = std::sin(pt.alpha) >= 0.0 ? 1.0 : -1.0;
    w_low = -c.B_mu + sgn * 2.0 * p_mu;
  }
  Tensor2 t = pt.U * r_up.transpose() - r_up * pt.U.transpose();
  for (int a = 0; a < 4; ++a)
    for (int n = 0; n < 4; ++n)
      for (int mu = 0; mu < 4; ++mu)
        for (int rho = 0; rho < 4; ++rho) t(a, n) += w_low(mu) * eps.upper(mu, rho, a, n) * u_low(rho);

  out.entries.push_back({"R_mu U^mu", {c.R_mu.dot(pt.U)}});
  if (label == LounestoLabel::Flagpole) {
    t += 2.0 * m * pt.M;
    out.entries.push_back({"B_mu U^mu", {c.B_mu.dot(pt.U)}});
  } else {
    out.entries.push_back({"(-B_mu +- 2P_mu) U^mu", {w_low.dot(pt.U)}});
  }
  out.entries.push_back({"tensor", to_vector(t)});
  return out;
}

struct SingularPolarFields {
  ScalarField alpha;
  VectorSampler U;
  TensorSampler M;
};

inline PolarResiduals singular_polar_residuals(LounestoLabel label, const SingularPolarFields& f,
                                               const ConnectionField& conn, double m,
                                               const Point& x, double h = kDefaultFdStep) {
  SingularPolarPoint pt;
  pt.alpha = f.alpha.value(x);
  pt.grad_alpha = f.alpha.grad(x, h);
  pt.U = f.U(x);
  pt.M = f.M(x);
  return singular_polar_residuals(label, pt, conn.P(x), conn.R(x), m);
}

/// Charge conjugation i g^2 psi^* (no extra phase). Callers flip q.
inline Spinor apply_C(const Spinor& psi) {
  return kI * (gamma_basis().gamma[2] * psi.conjugate());
}

/// M transformation pi psi. Callers flip m.
inline Spinor apply_M(const Spinor& psi) { return gamma_basis().pi * psi; }

enum class Conjugacy { Self, Anti };

struct ElkoState {
  double chi = 1.0;
  double omega = 0.0;
  int helicity = +1;
  Conjugacy conjugacy = Conjugacy::Self;
  Spinor components = Spinor::Zero();
};

struct ElkoQuartet {
  ElkoState s_plus;
  ElkoState a_plus;
  ElkoState s_minus;
  ElkoState a_minus;

  /// Components in the order (S+, A+, S-, A-).
  std::array<Spinor, 4> spinors() const {
    return {s_plus.components, a_plus.components, s_minus.components, a_minus.components};
  }
};

/// The four self/antiself-conjugate Elko states of given amplitude and phase;
/// chi = 1, omega = 0 gives the trivialized columns.
inline ElkoQuartet elko_states(double chi = 1.0, double omega = 0.0) {
  if (!(chi > 0.0)) throw InputError("elko_states: chi must be positive");
  const Complex em = chi * std::exp(-kI * omega);
  const Complex ep = chi * std::exp(kI * omega);
  ElkoQuartet q;
  q.s_plus = {chi, omega, +1, Conjugacy::Self, Spinor(0.0, -em, ep, 0.0)};
  q.a_plus = {chi, omega, +1, Conjugacy::Anti, Spinor(0.0, em, ep, 0.0)};
  q.s_minus = {chi, omega, -1, Conjugacy::Self, Spinor(em, 0.0, 0.0, ep)};
  q.a_minus = {chi, omega, -1, Conjugacy::Anti, Spinor(-em, 0.0, 0.0, ep)};
  return q;
}

/// g_mu p^mu for an upper-index momentum.
inline Matrix4c slash(const Vec4& p_up) {
  const auto& g = gamma_basis();
  Matrix4c s = Matrix4c::Zero();
  for (int mu = 0; mu < 4; ++mu) s += g.gamma_lower(mu) * p_up(mu);
  return s;
}

/// Norms of the four kinematic relations
///   p.g S+ + m A- ,  p.g S- - m A+ ,  p.g A+ - m S- ,  p.g A- + m S+
/// for states ordered (S+, A+, S-, A-).
inline std::array<double, 4> elko_kinematic_residuals(const std::array<Spinor, 4>& st,
                                                      const Vec4& p_up, double m) {
  const Matrix4c ps = slash(p_up);
  const auto& [sp, ap, sm, am] = st;
  return {(ps * sp + m * am).norm(), (ps * sm - m * ap).norm(), (ps * ap - m * sm).norm(),
          (ps * am + m * sp).norm()};
}

}  // namespace polarspinor

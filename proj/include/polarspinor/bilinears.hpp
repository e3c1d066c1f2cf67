#pragma once

#include <string>
#include <vector>

#include "clifford.hpp"

namespace polarspinor {

/// The sextet of real bilinear covariants of a single spinor. Vectors and
/// tensors carry upper indices.
struct Bilinears {
  double Theta = 0.0;  // i psibar pi psi
  double Phi = 0.0;    // psibar psi
  Vec4 S = Vec4::Zero();        // psibar g^a pi psi
  Vec4 U = Vec4::Zero();        // psibar g^a psi
  Tensor2 Sigma = Tensor2::Zero();  // 2 psibar sigma^ij pi psi
  Tensor2 M = Tensor2::Zero();      // 2i psibar sigma^ij psi
};

inline Vec4 lower(const Vec4& v) {
  return gamma_basis().eta * v;
}

inline Tensor2 lower(const Tensor2& t) {
  const auto& eta = gamma_basis().eta;
  return eta * t * eta;
}

inline double minkowski_dot(const Vec4& a, const Vec4& b) { return a.dot(lower(b)); }

/// Computes all six covariants. Imaginary parts of the defining contractions
/// must vanish to 1e-12 (U^0 + 1); otherwise ConsistencyError is thrown.
inline Bilinears compute_bilinears(const Spinor& psi) {
  if (!is_finite(psi)) throw InputError("compute_bilinears: non-finite spinor");
  const auto& g = gamma_basis();
  const Eigen::RowVector4cd bar = psi.adjoint() * g.gamma[0];
  double imag = 0.0;
  auto take = [&](Complex z) {
    imag = std::max(imag, std::abs(z.imag()));
    return z.real();
  };

  Bilinears b;
  const Spinor pi_psi = g.pi * psi;
  b.Theta = take(kI * (bar * pi_psi)(0));
  b.Phi = take((bar * psi)(0));
  for (int a = 0; a < 4; ++a) {
    b.S(a) = take((bar * g.gamma[a] * pi_psi)(0));
    b.U(a) = take((bar * g.gamma[a] * psi)(0));
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double sig = take(2.0 * (bar * g.sigma[i][j] * pi_psi)(0));
      const double m = take(2.0 * kI * (bar * g.sigma[i][j] * psi)(0));
      b.Sigma(i, j) = sig;
      b.Sigma(j, i) = -sig;
      b.M(i, j) = m;
      b.M(j, i) = -m;
    }
  }
  if (imag > 1e-12 * (b.U(0) + 1.0)) {
    throw ConsistencyError("compute_bilinears: imaginary residue " + std::to_string(imag) +
                           " exceeds tolerance");
  }
  return b;
}

/// One residual per Fierz identity, normalized by (U^0)^2.
struct FierzReport {
  std::vector<std::pair<std::string, double>> residuals;

  double worst() const {
    double w = 0.0;
    for (const auto& [name, r] : residuals) w = std::max(w, r);
    return w;
  }
  double at(const std::string& label) const {
    for (const auto& [name, r] : residuals)
      if (name == label) return r;
    throw InputError("FierzReport: unknown label " + label);
  }
};

inline const std::array<std::string, 10>& fierz_labels() {
  static const std::array<std::string, 10> labels = {
      "M_ik U^i = Theta S_k",
      "Sigma_ik U^i = Phi S_k",
      "M_ik S^i = Theta U_k",
      "Sigma_ik S^i = Phi U_k",
      "M_ab Phi - Sigma_ab Theta = U^j S^k eps_jkab",
      "M_ab Theta + Sigma_ab Phi = U_[a S_b]",
      "M_ab M^ab / 2 = -Sigma_ab Sigma^ab / 2 = Phi^2 - Theta^2",
      "M_ab Sigma^ab / 2 = -2 Theta Phi",
      "U_a U^a = -S_a S^a = Theta^2 + Phi^2",
      "U_a S^a = 0"};
  return labels;
}

/// U_[a S_b] = U_a S_b - U_b S_a, lowered indices (no factor 1/2).
inline Tensor2 antisymmetrized_product(const Vec4& u_lower, const Vec4& s_lower) {
  return u_lower * s_lower.transpose() - s_lower * u_lower.transpose();
}

/// U^j S^k eps_jkab with lowered free indices.
inline Tensor2 dual_product(const Vec4& u_upper, const Vec4& s_upper) {
  const auto& eps = gamma_basis().epsilon;
  Tensor2 t = Tensor2::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) t(a, b) += u_upper(j) * s_upper(k) * eps(j, k, a, b);
  return t;
}

inline FierzReport fierz_check(const Bilinears& b) {
  const Vec4 Ul = lower(b.U);
  const Vec4 Sl = lower(b.S);
  const Tensor2 Ml = lower(b.M);
  const Tensor2 Sgl = lower(b.Sigma);
  const double u0 = b.U(0);
  const double norm = u0 > 0.0 ? 1.0 / (u0 * u0) : 1.0;

  auto vmax = [](const Vec4& v) { return v.cwiseAbs().maxCoeff(); };
  auto tmax = [](const Tensor2& t) { return t.cwiseAbs().maxCoeff(); };

  const double half_mm = 0.5 * (Ml.cwiseProduct(b.M)).sum();
  const double half_ss = 0.5 * (Sgl.cwiseProduct(b.Sigma)).sum();
  const double half_ms = 0.5 * (Ml.cwiseProduct(b.Sigma)).sum();
  const double phi2_theta2 = b.Phi * b.Phi - b.Theta * b.Theta;
  const double uu = Ul.dot(b.U);
  const double ss = Sl.dot(b.S);
  const double sum_sq = b.Theta * b.Theta + b.Phi * b.Phi;

  const auto& labels = fierz_labels();
  const std::array<double, 10> raw = {
      vmax(Ml.transpose() * b.U - b.Theta * Sl),
      vmax(Sgl.transpose() * b.U - b.Phi * Sl),
      vmax(Ml.transpose() * b.S - b.Theta * Ul),
      vmax(Sgl.transpose() * b.S - b.Phi * Ul),
      tmax(Ml * b.Phi - Sgl * b.Theta - dual_product(b.U, b.S)),
      tmax(Ml * b.Theta + Sgl * b.Phi - antisymmetrized_product(Ul, Sl)),
      std::max(std::abs(half_mm - phi2_theta2), std::abs(-half_ss - phi2_theta2)),
      std::abs(half_ms + 2.0 * b.Theta * b.Phi),
      std::max(std::abs(uu - sum_sq), std::abs(-ss - sum_sq)),
      std::abs(Ul.dot(b.S))};

  FierzReport rep;
  for (std::size_t k = 0; k < raw.size(); ++k) rep.residuals.emplace_back(labels[k], raw[k] * norm);
  return rep;
}

}  // namespace polarspinor

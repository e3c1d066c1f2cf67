#pragma once

#include <string>

#include "bilinears.hpp"

namespace polarspinor {

enum class LounestoLabel {
  RegularScalarPseudoscalar,  // class 1: Phi != 0, Theta != 0
  RegularScalar,              // class 2: Phi != 0, Theta = 0
  RegularPseudoscalar,        // class 3: Phi = 0, Theta != 0
  FlagDipole,
  Flagpole,
  Dipole,
};

inline bool is_regular(LounestoLabel l) {
  return l == LounestoLabel::RegularScalarPseudoscalar || l == LounestoLabel::RegularScalar ||
         l == LounestoLabel::RegularPseudoscalar;
}

inline bool is_singular(LounestoLabel l) { return !is_regular(l); }

inline std::string to_string(LounestoLabel l) {
  switch (l) {
    case LounestoLabel::RegularScalarPseudoscalar: return "Regular(Phi!=0,Theta!=0)";
    case LounestoLabel::RegularScalar: return "Regular(Phi!=0,Theta=0)";
    case LounestoLabel::RegularPseudoscalar: return "Regular(Phi=0,Theta!=0)";
    case LounestoLabel::FlagDipole: return "FlagDipole";
    case LounestoLabel::Flagpole: return "Flagpole";
    case LounestoLabel::Dipole: return "Dipole";
  }
  return "?";
}

struct LounestoClass {
  LounestoLabel label = LounestoLabel::RegularScalar;
  double tolerance_used = 0.0;
  // U^0-normalized magnitudes the decision was made on.
  double phi_ratio = 0.0;
  double theta_ratio = 0.0;
  double s_ratio = 0.0;
  double m_ratio = 0.0;
};

inline constexpr double kDefaultClassTolerance = 1e-9;

inline LounestoClass classify(const Bilinears& b, double tol = kDefaultClassTolerance) {
  const double u0 = b.U(0);
  if (!(u0 > tol)) throw InputError("classify: zero spinor (U^0 below tolerance)");

  LounestoClass c;
  c.tolerance_used = tol;
  c.phi_ratio = std::abs(b.Phi) / u0;
  c.theta_ratio = std::abs(b.Theta) / u0;
  c.s_ratio = b.S.cwiseAbs().maxCoeff() / u0;
  c.m_ratio = b.M.cwiseAbs().maxCoeff() / u0;

  const bool phi = c.phi_ratio > tol;
  const bool theta = c.theta_ratio > tol;
  if (phi && theta) {
    c.label = LounestoLabel::RegularScalarPseudoscalar;
  } else if (phi) {
    c.label = LounestoLabel::RegularScalar;
  } else if (theta) {
    c.label = LounestoLabel::RegularPseudoscalar;
  } else {
    const bool s = c.s_ratio > tol;
    const bool m = c.m_ratio > tol;
    if (s && m) {
      c.label = LounestoLabel::FlagDipole;
    } else if (m) {
      c.label = LounestoLabel::Flagpole;
    } else if (s) {
      c.label = LounestoLabel::Dipole;
    } else {
      throw ConsistencyError("classify: nonzero spinor with S = M = 0");
    }
  }
  return c;
}

inline LounestoClass classify(const Spinor& psi, double tol = kDefaultClassTolerance) {
  return classify(compute_bilinears(psi), tol);
}

}  // namespace polarspinor

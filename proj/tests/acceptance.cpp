// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "polarspinor/polarspinor.hpp"

using namespace polarspinor;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("criterion %2d  %-4s  %s  [%s]\n", id, ok ? "PASS" : "FAIL", title.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Spinor random_spinor(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Spinor s;
  for (int k = 0; k < 4; ++k) s(k) = Complex(d(rng), d(rng));
  return s;
}

SpinorTransformation random_transformation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-0.8, 0.8);
  std::array<double, 6> th{};
  for (auto& t : th) t = d(rng);
  return spinor_transformation(th, d(rng), 1.0);
}

Vec3 random_vec3(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return Vec3(d(rng), d(rng), d(rng));
}

Spinor lambda_z(double m, double z) {
  return Spinor(std::exp(kI * (m * z)), 0.0, 0.0, std::exp(-kI * (m * z)));
}

Rank3 flagpole_r(double m) {
  Rank3 r;
  r.set_antisymmetric(2, 1, 1, -2 * m);
  return r;
}

void fierz_suite() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) worst = std::max(worst, fierz_check(compute_bilinears(random_spinor(rng))).worst());
  report(1, "Fierz suite on 1e4 random spinors", worst < 1e-12, "worst normalized residual " + fmt(worst));
}

void algebra_calibration() {
  const auto rep = check_invariants(gamma_basis());
  report(2, "Clifford algebra invariants", rep.worst() <= 1e-14,
         "worst entry " + fmt(rep.worst()) + ", pi duality " + fmt(rep.pi_duality));
}

void polar_round_trip() {
  std::mt19937_64 rng(1002);
  double trip = 0.0, frame = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Spinor psi = random_spinor(rng);
    const auto p = decompose_regular(psi);
    trip = std::max(trip, (reconstruct_regular(p) - psi).cwiseAbs().maxCoeff());
    const Vec4 u = p.velocity(), s = p.spin_axis();
    frame = std::max({frame, std::abs(minkowski_dot(u, u) - 1.0), std::abs(minkowski_dot(s, s) + 1.0),
                      std::abs(minkowski_dot(u, s))});
  }
  report(3, "polar round trip on 1e3 regular spinors", trip < 1e-10 && frame < 1e-12,
         "component error " + fmt(trip) + ", frame normalization " + fmt(frame));
}

void classification() {
  bool fixed = classify(Spinor(1, 0, 0, 0)).label == LounestoLabel::Dipole &&
               classify(Spinor(1, 0, 0, 1)).label == LounestoLabel::Flagpole &&
               is_regular(classify(Spinor(1, 0, 1, 0)).label) &&
               classify(reconstruct_singular(make_polar_singular(0.3))).label == LounestoLabel::FlagDipole;
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::uniform_real_distribution<double> a(-1.4, 1.4);
  int mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    Spinor base;
    switch (k % 5) {
      case 0: base = random_spinor(rng); break;
      case 1: base = Spinor(1, 0, 0, 0); break;
      case 2: base = Spinor(1, 0, 0, 1); break;
      case 3: base = Spinor(1, 0, 1, 0); break;
      default: base = reconstruct_singular(make_polar_singular(a(rng), d(rng), random_vec3(rng, 2.0), d(rng)));
    }
    const auto label = classify(base).label;
    const Complex c(d(rng), d(rng));
    if (classify(c * base).label != label) ++mismatches;
    if (classify(random_transformation(rng).apply(base)).label != label) ++mismatches;
  }
  report(4, "Lounesto classification", fixed && mismatches == 0,
         std::string("fixed set ") + (fixed ? "4/4" : "wrong") + ", invariance mismatches " +
             std::to_string(mismatches) + "/2000");
}

void flagpole_solution() {
  const double m = 1.0;
  const ContractionPair c = contract_R(flagpole_r(m));
  const Matrix4c f = flagpole_dirac_matrix(c, m);
  Matrix4c integer;
  integer << 1, 0, 0, -1, 0, 1, 1, 0, 0, 1, 1, 0, -1, 0, 0, 1;
  const double matrix_err = (f / (-2.0 * m) - integer).cwiseAbs().maxCoeff();
  const double kernel = (f * Spinor(1, 0, 0, 1)).cwiseAbs().maxCoeff();

  // Component form in flat spacetime with the exact derivative of lambda(z):
  // nabla_1 = d_1 (C = 0, R supplied by the frame field).
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double z = -1.0 + 2.0 * k / 9.0;
    std::array<Spinor, 4> nabla;
    for (auto& n : nabla) n.setZero();
    nabla[1] = Spinor(kI * m * std::exp(kI * (m * z)), 0.0, 0.0, -kI * m * std::exp(-kI * (m * z)));
    worst = std::max(worst, dirac_residual(lambda_z(m, z), nabla, m).norm);
  }
  const bool ok = matrix_err == 0.0 && kernel < 1e-15 && worst < 1e-10;
  report(5, "explicit flagpole solution", ok,
         "factored matrix error " + fmt(matrix_err) + ", |F(1,0,0,1)| " + fmt(kernel) +
             ", lambda(z) residual max over 10 points in [-1,1] " + fmt(worst) +
             " (vanishes only where m z is a multiple of pi)");
}

void expansion() {
  const double m = 1.0;
  const auto conn = constant_connection(Vec4::Zero(), flagpole_r(m));
  double worst = 0.0;
  for (double z : {0.1, 1.0})
    for (int steps : {1, 2, 3, 5, 8, 16, 64, 256}) {
      const auto r = expand(Spinor(1, 0, 0, 1), Path{Point::Zero(), Point(0, z, 0, 0), steps}, conn);
      worst = std::max(worst, (r.spinor - lambda_z(m, z)).cwiseAbs().maxCoeff());
    }
  double product = 0.0;
  for (double z : {0.1, 1.0}) {
    const auto [cl, cr] = chiral_coefficients(lambda_z(m, z), Spinor(1, 0, 0, 1));
    product = std::max(product, std::abs(cl * cr - 1.0));
  }
  report(6, "doubly-chiral expansion", worst < 1e-10 && product < 1e-12,
         "endpoint error " + fmt(worst) + ", |c_L c_R - 1| " + fmt(product));
}

void derivative_verification() {
  const auto flag = constant_connection(Vec4::Zero(), flagpole_r(1.0));
  const Path fpath{Point::Zero(), Point(0, 1, 0, 0), 4};
  const double f1 = verify_expansion(Spinor(1, 0, 0, 1), fpath, flag, 1e-4);
  const double f2 = verify_expansion(Spinor(1, 0, 0, 1), fpath, flag, 5e-5);
  const auto wave = constant_connection(Vec4(1.0, 0.3, -0.2, 0.5), Rank3{});
  const Path wpath{Point::Zero(), Point(1, 0.5, 0, 0), 2};
  const double w1 = verify_expansion(Spinor(1, 0, 1, 0), wpath, wave, 1e-4);
  const double w2 = verify_expansion(Spinor(1, 0, 1, 0), wpath, wave, 5e-5);
  const double rf = f1 / f2, rw = w1 / w2;
  const bool ok = rf >= 3.5 && rf <= 4.5 && rw >= 3.5 && rw <= 4.5;
  report(7, "O(h^2) derivative verification", ok,
         "flagpole ratio " + fmt(rf) + " (residual " + fmt(f1) + "), plane-wave ratio " + fmt(rw) +
             " (residual " + fmt(w1) + ")");
}

void polar_equivalence() {
  const double m = 1.5;
  RegularPolarPoint pt;
  const double polar_ok = regular_polar_residuals(pt, Vec4(m, 0, 0, 0), Rank3{}, m).worst();
  PolarPointData d;
  d.P = Vec4(m, 0, 0, 0);
  const Spinor psi = Spinor(1, 0, 1, 0) / std::numbers::sqrt2;
  const double comp_ok =
      dirac_residual(psi, polar_derivative_matrix(LounestoLabel::RegularScalar, d), m).norm;

  d.P = Vec4(m, 0.2, 0, 0);
  const double polar_bad = regular_polar_residuals(pt, d.P, Rank3{}, m).worst();
  const double comp_bad =
      dirac_residual(psi, polar_derivative_matrix(LounestoLabel::RegularScalar, d), m).norm;
  const bool ok = polar_ok < 1e-10 && comp_ok < 1e-10 && polar_bad > 1e-3 && comp_bad > 1e-3;
  report(8, "polar/component Dirac equivalence", ok,
         "plane wave polar " + fmt(polar_ok) + " component " + fmt(comp_ok) + "; perturbed polar " +
             fmt(polar_bad) + " component " + fmt(comp_bad));
}

void discrete_symmetries() {
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> d(0.1, 3.0);
  double elko = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto q = elko_states(d(rng), d(rng));
    elko = std::max({elko, (apply_C(q.s_plus.components) - q.s_plus.components).cwiseAbs().maxCoeff(),
                     (apply_C(q.s_minus.components) - q.s_minus.components).cwiseAbs().maxCoeff(),
                     (apply_C(q.a_plus.components) + q.a_plus.components).cwiseAbs().maxCoeff(),
                     (apply_C(q.a_minus.components) + q.a_minus.components).cwiseAbs().maxCoeff()});
  }
  double twice = 0.0, scalars = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Spinor psi = random_spinor(rng);
    twice = std::max(twice, (apply_C(apply_C(psi)) - psi).cwiseAbs().maxCoeff());
    const auto b0 = compute_bilinears(psi), b1 = compute_bilinears(apply_C(psi));
    scalars = std::max({scalars, std::abs(b1.Phi + b0.Phi), std::abs(b1.Theta + b0.Theta)});
  }

  // Kernel of the flagpole matrix; C must map it into itself.
  const double m = 1.0;
  const Matrix4c f = flagpole_dirac_matrix(contract_R(flagpole_r(m)), m);
  Eigen::JacobiSVD<Matrix4c> svd(f, Eigen::ComputeFullV);
  double c_map = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Spinor lam = svd.matrixV().col(2) * Complex(d(rng), d(rng)) + svd.matrixV().col(3) * Complex(d(rng), -d(rng));
    c_map = std::max(c_map, (f * apply_C(lam)).norm() / lam.norm());
  }

  // M-duality on solutions: rest-frame plane wave and the flagpole column.
  PolarPointData wave;
  wave.P = Vec4(m, 0, 0, 0);
  const auto dw = polar_derivative_matrix(LounestoLabel::RegularScalar, wave);
  PolarPointData flag;
  flag.R = flagpole_r(m);
  const auto df = polar_derivative_matrix(LounestoLabel::Flagpole, flag);
  double duality = 0.0;
  for (const auto& [psi, dm] : {std::pair{Spinor(1, 0, 1, 0), dw}, std::pair{Spinor(1, 0, 0, 1), df}}) {
    duality = std::max(duality, std::abs(dirac_residual(psi, dm, m).norm - dirac_residual(apply_M(psi), dm, -m).norm));
  }
  const bool ok = elko < 1e-14 && twice < 1e-14 && c_map < 1e-12 && duality < 1e-12 && scalars < 1e-12;
  report(9, "discrete symmetries C and M", ok,
         "Elko C eigenvalues " + fmt(elko) + ", C^2 " + fmt(twice) + ", C on kernel " + fmt(c_map) +
             ", M duality " + fmt(duality) + ", Phi/Theta flip " + fmt(scalars));
}

void elko_kinematics() {
  const double m = 1.3;
  const auto st = elko_states().spinors();
  double rest = 0.0;
  for (double r : elko_kinematic_residuals(st, Vec4(m, 0, 0, 0), m)) rest = std::max(rest, r);
  std::mt19937_64 rng(1005);
  double boosted = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto s = boost(random_vec3(rng, 1.2));
    const Vec4 p = m * (lorentz_matrix(s.matrix) * Vec4(1, 0, 0, 0));
    auto moved = st;
    for (auto& v : moved) v = s.apply(v);
    for (double r : elko_kinematic_residuals(moved, p, m)) boosted = std::max(boosted, r);
  }
  // The kinematic operator p.g - m itself does not annihilate the states.
  double not_annihilated = 1e300;
  for (const auto& v : st) not_annihilated = std::min(not_annihilated, ((slash(Vec4(m, 0, 0, 0)) - m * Matrix4c::Identity()) * v).norm());
  const bool ok = rest == 0.0 && boosted < 1e-10 && not_annihilated > 1e-3;
  report(10, "Elko kinematic relations", ok,
         "rest " + fmt(rest) + ", boosted " + fmt(boosted) + ", min |(p.g - m) lambda| " + fmt(not_annihilated));
}

}  // namespace

int main() {
  fierz_suite();
  algebra_calibration();
  polar_round_trip();
  classification();
  flagpole_solution();
  expansion();
  derivative_verification();
  polar_equivalence();
  discrete_symmetries();
  elko_kinematics();
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}

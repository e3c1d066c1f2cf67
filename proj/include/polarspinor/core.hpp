#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace polarspinor {

using Complex = std::complex<double>;
using Spinor = Eigen::Vector4cd;
using Matrix4c = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4d;
using Tensor2 = Eigen::Matrix4d;
using Point = Vec4;

inline constexpr Complex kI{0.0, 1.0};

/// Real rank-3 array indexed as (i, j, mu), all indices lowered.
///
/// Used for the spin connection C_{ij mu} and the tensorial connection
/// R_{ij mu}; both are antisymmetric in (i, j).
class Rank3 {
 public:
  Rank3() { data_.fill(0.0); }

  double& operator()(int i, int j, int mu) { return data_[index(i, j, mu)]; }
  double operator()(int i, int j, int mu) const { return data_[index(i, j, mu)]; }

  /// Sets (i,j,mu) and its antisymmetric partner (j,i,mu) = -value.
  void set_antisymmetric(int i, int j, int mu, double value) {
    (*this)(i, j, mu) = value;
    (*this)(j, i, mu) = -value;
  }

  Rank3& operator+=(const Rank3& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Rank3& operator-=(const Rank3& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Rank3& operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend Rank3 operator+(Rank3 a, const Rank3& b) { return a += b; }
  friend Rank3 operator-(Rank3 a, const Rank3& b) { return a -= b; }
  friend Rank3 operator*(double s, Rank3 a) { return a *= s; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Largest |R_{ij mu} + R_{ji mu}|.
  double antisymmetry_defect() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int mu = 0; mu < 4; ++mu)
          m = std::max(m, std::abs((*this)(i, j, mu) + (*this)(j, i, mu)));
    return m;
  }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  const std::array<double, 64>& raw() const { return data_; }

 private:
  static constexpr std::size_t index(int i, int j, int mu) {
    return static_cast<std::size_t>(16 * i + 4 * j + mu);
  }
  std::array<double, 64> data_;
};

// Error categories. InputError covers caller mistakes (bad arguments, wrong
// spinor class); ConsistencyError means an internal identity was violated.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_finite(const Spinor& s) { return s.allFinite(); }

inline double max_abs(const Spinor& s) { return s.cwiseAbs().maxCoeff(); }

}  // namespace polarspinor

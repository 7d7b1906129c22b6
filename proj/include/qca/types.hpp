#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qca {

using cplx = std::complex<double>;

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using IntVec = Eigen::Matrix<long long, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2c = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Tolerances used as defaults across the library.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kEigenTol = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RadiusExceeded : public Error {
 public:
  using Error::Error;
};

class SupportMismatch : public Error {
 public:
  using Error::Error;
};

class NonUnitary : public Error {
 public:
  using Error::Error;
};

class BranchPoint : public Error {
 public:
  using Error::Error;
};

class ZoneLeak : public Error {
 public:
  using Error::Error;
};

class BoundaryContact : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

namespace pauli {

inline Mat2 identity() { return Mat2::Identity(); }

inline Mat2 x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

inline Mat2 y() {
  Mat2 m;
  m << 0, -kI, kI, 0;
  return m;
}

inline Mat2 z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

inline std::array<Mat2, 3> sigma() { return {x(), y(), z()}; }

// v·σ for a real or complex 3-vector.
template <typename Derived>
Mat2 dot(const Eigen::MatrixBase<Derived>& v) {
  return cplx(v(0)) * x() + cplx(v(1)) * y() + cplx(v(2)) * z();
}

}  // namespace pauli

// Entry-wise max norm; the residual measure used by every report.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// ‖U†U − I‖ and ‖UU† − I‖ in the max norm.
inline double unitarity_residual(const CMatrix& u) {
  const auto id = CMatrix::Identity(u.rows(), u.cols());
  return std::max(max_abs(u.adjoint() * u - id), max_abs(u * u.adjoint() - id));
}

}  // namespace qca

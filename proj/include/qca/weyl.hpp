#pragma once

#include <string>

#include "qca/cayley.hpp"

namespace qca {

enum class WeylFamily { a_plus, a_minus, b_plus, b_minus, a, b, unique };

struct WeylVariant {
  int dimension = 3;
  WeylFamily family = WeylFamily::a_plus;
  double theta = 0.0;  // only meaningful for d = 2

  static WeylVariant bcc(WeylFamily f) { return {3, f, 0.0}; }
  static WeylVariant square(WeylFamily f, double theta = 0.0) { return {2, f, theta}; }
  static WeylVariant line() { return {1, WeylFamily::unique, 0.0}; }

  bool is_transposed() const {
    return family == WeylFamily::b_plus || family == WeylFamily::b_minus || family == WeylFamily::b;
  }
  LatticeKind lattice() const;
  std::string name() const;
};

// Checks that the family matches the dimension.
void validate(const WeylVariant& v);

// W_k = u I − i σ·ñ.
struct WeylSymbol {
  double u = 1.0;
  Vec3 n_tilde = Vec3::Zero();
};

WeylSymbol weyl_symbol(const WeylVariant& v, const RealVec& k);
Mat2 weyl_matrix(const WeylVariant& v, const RealVec& k);

struct DispersionSample {
  RealVec k;
  // Eigenphases of W_k are −omega_plus and +omega_plus; omega_minus = −omega_plus.
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  RealVec group_velocity;  // ∇ω
  Vec3 helicity = Vec3::Zero();
};

// ω = arccos u, evaluated as atan2(|ñ|, u).
double weyl_omega(const WeylVariant& v, const RealVec& k);
// Analytic ∇ω. Zero exactly at ω = 0, where the cone has no gradient.
RealVec weyl_group_velocity(const WeylVariant& v, const RealVec& k);
// n_k = (ω / sin ω) ñ_k.
Vec3 weyl_helicity(const WeylVariant& v, const RealVec& k);
DispersionSample dispersion(const WeylVariant& v, const RealVec& k);

// σ·n_k. Throws BranchPoint when ω is within 1e−6 of π.
Mat2 interpolating_hamiltonian(const WeylVariant& v, const RealVec& k);

// Jacobian ∂ñ/∂k at k = 0 (3 × d).
RealMatrix weyl_jacobian_at_origin(const WeylVariant& v);
// σ·(J k), the first-order expansion of the interpolating Hamiltonian.
Mat2 small_k_hamiltonian(const WeylVariant& v, const RealVec& k);

// Shared by the Dirac module: ω/sin ω with its series near the origin.
double omega_over_sin(double omega);

}  // namespace qca

#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "qca/evolution.hpp"
#include "qca/weyl.hpp"

namespace qca {

// G^i = φ^T σ^i ψ.
Vec3c bilinear_G(const Vec2c& psi, const Vec2c& phi);

// Removes the component along n. Throws when n = 0.
Vec3c transverse_project(const Vec3c& g, const Vec3& n);
// Projection against the helicity direction n_{k/2} of the variant.
Vec3c transverse_project(const Vec3c& g, const WeylVariant& v, const RealVec& k);

// (J_k)_{ij} = −i ε_{kij}.
std::array<Eigen::Matrix3cd, 3> angular_momentum_matrices();
// Exp(−i v·J), the right-handed rotation by |v| about v̂.
Eigen::Matrix3d rotation_exp(const Vec3& v);

// max_i ‖e^{(i/2)v·σ} σ_i e^{−(i/2)v·σ} − Σ_j Exp(−iv·J)_{ij} σ_j‖.
double angular_momentum_identity_residual(const Vec3& v);
// Same comparison with the conjugation order reversed on the left.
double angular_momentum_identity_residual_reversed(const Vec3& v);

// Right-handed orthonormal pair transverse to n: u1 = normalize(a × n̂) with
// a = ẑ, or a = ŷ when n̂ is within 1e−6 of ±ẑ; u2 = n̂ × u1.
std::pair<Vec3, Vec3> polarization_basis(const Vec3& n);
std::pair<Vec3, Vec3> polarization_basis(const WeylVariant& v, const RealVec& k);

struct ModeAmplitudes {
  Vec2c psi;
  Vec2c phi;
};

/// Two Weyl fields on one lattice: ψ evolves by W_k, φ by W_k*.
struct TwoFieldState {
  FieldState psi;
  FieldState phi;
  WeylVariant weyl = WeylVariant::bcc(WeylFamily::a_plus);
};

// ψ and φ as superpositions of plane waves at ±k/2 with random unit spinors,
// on a periodic lattice of `size` sites per direction.
TwoFieldState plane_wave_pair(const WeylVariant& v, const RealVec& k, std::uint64_t seed, int size = 4);

// The descriptor evolving φ: A′_{h⁻¹} = conj(A_h), so A′_k = conj(A_k).
AutomatonDescriptor conjugate_automaton(const AutomatonDescriptor& a);

// ψ̂(k) = Σ_x e^{−ik·x} ψ(x) at an arbitrary wave vector, normalized by 1/√N.
Vec2c fourier_mode(const FieldState& state, const RealVec& k);

// Mode amplitudes at k/2 evolved for continuous time t by e^{−iH_I t}
// (ψ) and its complex conjugate (φ).
ModeAmplitudes evolve_mode(const TwoFieldState& s, const RealVec& half_k, double t);

struct BilinearField {
  RealVec k;
  Vec3c g;
  Vec3c g_t;
  Vec3c e;
  Vec3c b;
};

// G, G_T, E_G, B_G at wave vector k and time t.
BilinearField bilinear_field(const TwoFieldState& s, const RealVec& k, double t);

struct MaxwellReport {
  double rotation = 0.0;          // ‖∂_t G_T − 2n × G_T‖ by central differences
  double gauss_e = 0.0;           // |2n·E|
  double gauss_b = 0.0;           // |2n·B|
  double ampere = 0.0;            // ‖∂_t E − i2n × B‖
  double faraday = 0.0;           // ‖∂_t B + i2n × E‖
  double transversality = 0.0;    // |n·G_T|
  double rotation_form = 0.0;     // ‖G_T(t) − Exp(−i2n·J t) G_T(0)‖
  double parity_defect = 0.0;     // |n_{k/2} + n_{−k/2}|; the E/B equations are exact when it vanishes

  double max_residual() const;
};

// Residuals at time t with finite-difference step dt. Throws at k = 0.
MaxwellReport maxwell_residual(const TwoFieldState& s, const RealVec& k, double t, double dt);

// |2 n_{k/2} − J k| / |J k|, where J k is the variant's first-order helicity
// map (σ·J k is the Weyl Hamiltonian). Throws at k = 0.
double rotation_generator_deviation(const WeylVariant& v, const RealVec& k);

}  // namespace qca

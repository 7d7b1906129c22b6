#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qca/weyl.hpp"

namespace qca {

struct DiracDescriptor {
  WeylVariant weyl;
  double mass = 0.0;

  double n() const { return std::sqrt(1.0 - mass * mass); }
};

void validate(const DiracDescriptor& dd);

namespace gamma {

// Chiral representation: γ⁰ = offdiag(I, I), γ^j = offdiag(σ^j, −σ^j).
Mat4 g0();
std::array<Mat4, 3> gj();
// γ⁰γ^j = diag(−σ^j, σ^j).
std::array<Mat4, 3> g0gj();

}  // namespace gamma

// [[n W†, i m I], [i m I, n W]] = n u I − i n γ⁰γ·ñ + i m γ⁰.
Mat4 dirac_matrix(const DiracDescriptor& dd, const RealVec& k);

// ω = arccos(n u), evaluated as atan2(√(n²|ñ|² + m²), n u).
double dirac_omega(const DiracDescriptor& dd, const RealVec& k);
DispersionSample dirac_dispersion(const DiracDescriptor& dd, const RealVec& k);

// f (n γ⁰γ·ñ − m γ⁰), f = ω / sin ω. Throws BranchPoint near ω = π.
Mat4 dirac_interpolating_hamiltonian(const DiracDescriptor& dd, const RealVec& k);

// f(0) (n γ⁰γ·J k − m γ⁰), the expansion of the interpolating Hamiltonian to
// first order in k, with f(0) = arccos(n)/m.
Mat4 dirac_small_k_hamiltonian(const DiracDescriptor& dd, const RealVec& k);
double dirac_f0(double mass);

/// Candidate coupling [[p W†, q X], [r Y, t W]].
struct Coupling {
  cplx p{1.0, 0.0}, q{0.0, 0.0}, r{0.0, 0.0}, t{1.0, 0.0};
  Mat2 x = Mat2::Identity();
  Mat2 y = Mat2::Identity();

  Mat4 matrix(const Mat2& w) const;
};

// max over the samples of ‖D†D − I‖.
double coupling_unitarity_residual(const Coupling& c, const WeylVariant& weyl,
                                   const std::vector<RealVec>& k_samples);

enum class CouplingClass {
  mass_family,      // X, Y scalar, p = t = n, |qX| = |rY| = m up to conjugation
  block_phase,      // as above but the two Weyl blocks carry different phases
  k_independent,    // p = t = 0, so the automaton has no Weyl part
  other,
};

std::string to_string(CouplingClass c);
CouplingClass classify_coupling(const Coupling& c, double tol = 1e-4);

struct ProbeReport {
  int seeds = 0;
  int k_samples = 0;
  int converged = 0;
  int in_family = 0;
  int block_phase = 0;
  int k_independent = 0;
  int other = 0;
  double best_off_family_residual = 0.0;  // smallest residual among fits outside the family
  double worst_in_family_residual = 0.0;

  int off_family() const { return block_phase + k_independent + other; }
};

/// Levenberg–Marquardt fits of the 24 real coupling parameters from random
/// starting points, each minimizing the unitarity defect over `k_count`
/// random wave vectors.
ProbeReport dirac_uniqueness_probe(const WeylVariant& weyl, int seeds, std::uint64_t seed, int k_count = 50,
                                   double converged_tol = 1e-6);

}  // namespace qca

#pragma once

#include <bitset>
#include <unordered_map>
#include <vector>

#include "qca/types.hpp"

namespace qca {

/// Exact fermionic Fock space for the photon construction, on sparse
/// occupation vectors.
///
/// Modes are (field, q, spin) with field ψ or φ, q indexing the N_k
/// wave-vector pairs of the region Ω_k and spin in {0, 1}. Operators act with
/// the Jordan–Wigner sign (−1)^{number of occupied modes below}.
class FockOracle {
 public:
  static constexpr int kMaxModes = 256;
  using Occupation = std::bitset<kMaxModes>;
  using State = std::unordered_map<Occupation, cplx>;

  enum class Field { psi = 0, phi = 1 };

  // Flat profile f(q) = 1/√N_k.
  explicit FockOracle(int n_k);
  // Arbitrary profile; must satisfy Σ|f(q)|² = 1.
  explicit FockOracle(std::vector<cplx> profile);

  int n_k() const { return static_cast<int>(profile_.size()); }
  int n_modes() const { return 4 * n_k(); }
  int mode(Field f, int q, int spin) const { return (static_cast<int>(f) * n_k() + q) * 2 + spin; }
  const std::vector<cplx>& profile() const { return profile_; }

  static State vacuum();
  // ψ and φ occupied at q < m with spin 0.
  State filled(int m) const;

  State annihilate(int mode, const State& s) const;
  State create(int mode, const State& s) const;

  // γ = (1/√2) Σ_q f(q) Σ_{ab} (u·σ)_{ab} φ_{q,a} ψ_{q,b} and its adjoint.
  State gamma(const Vec3& u, const State& s) const;
  State gamma_dagger(const Vec3& u, const State& s) const;

  // ‖([γ(u_i), γ†(u_j)] − δ_ij)|s⟩‖ with δ_ij = 1 when same_polarization.
  double commutator_deviation(const Vec3& ui, const Vec3& uj, bool same_polarization, const State& s) const;

  // max_ξ M_ξ / N_k, with M_ξ the mean number of ξ fermions in the region.
  double epsilon(const State& s) const;

  // max over mode pairs of ‖({a_i, a_j†} − δ_ij)|s⟩‖.
  double anticommutator_residual(const State& s) const;

 private:
  std::vector<cplx> profile_;
};

double norm(const FockOracle::State& s);
FockOracle::State add(const FockOracle::State& a, const FockOracle::State& b, cplx scale_b = 1.0);

struct FockDeviation {
  int n_k = 0;
  int fill = 0;
  double epsilon = 0.0;
  double same = 0.0;   // ‖([γ¹, γ¹†] − 1)|s⟩‖
  double cross = 0.0;  // ‖[γ¹, γ²†]|s⟩‖
};

// Deviations on the filled(m) state with the polarization pair of an
// arbitrary fixed direction.
FockDeviation fock_commutator_deviation(int n_k, int fill);

}  // namespace qca

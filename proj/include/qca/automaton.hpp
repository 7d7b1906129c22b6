#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qca/cayley.hpp"

namespace qca {

// Transition matrices A_h keyed by element of S.
struct TransitionRule {
  int internal_dim = 0;
  std::map<Label, CMatrix> entries;

  // A_h, or the zero matrix when h carries no entry.
  CMatrix at(Label h) const;
};

/// One element l of the isotropy group: its action on S (as indices into
/// CayleyPresentation::labels()) and the unitary U_l on the internal space.
struct IsotropyElement {
  std::vector<int> permutation;
  CMatrix unitary;
};

struct IsotropyGroup {
  std::vector<IsotropyElement> elements;
};

struct AutomatonDescriptor {
  CayleyPresentation presentation;
  TransitionRule rule;
  std::optional<IsotropyGroup> isotropy;

  int internal_dim() const { return rule.internal_dim; }
};

// Builds the permutation of S induced by an orthogonal map R on the
// displacements. Throws when R does not map S onto itself.
std::vector<int> permutation_from_rotation(const CayleyPresentation& p, const RealMatrix& rotation);

IsotropyGroup make_isotropy(const CayleyPresentation& p,
                            const std::vector<std::pair<RealMatrix, CMatrix>>& rotations);

struct IsotropyReport {
  bool closed = false;
  bool transitive = false;
  double unitarity = 0.0;       // max ‖U†U − I‖
  double homomorphism = 0.0;    // max ‖U_a U_b − λ U_{ab}‖ over the best phase λ
  bool ok(double tol = kAlgebraicTol) const {
    return closed && transitive && unitarity <= tol && homomorphism <= tol;
  }
};

IsotropyReport validate_isotropy(const CayleyPresentation& p, const IsotropyGroup& g);

// A_k = Σ_h e^{−ik·h} A_h.
CMatrix assemble_k_operator(const AutomatonDescriptor& a, const RealVec& k);
CMatrix assemble_k_operator(const CayleyPresentation& p, const TransitionRule& rule, const RealVec& k);

struct OffDiagonalResidual {
  IntVec difference;   // h″ in free-basis coordinates
  double left = 0.0;   // ‖Σ_{h′−h=h″} A_h†A_h′‖
  double right = 0.0;  // ‖Σ_{h′−h=h″} A_h′A_h†‖
};

struct UnitarityReport {
  double completeness_left = 0.0;   // ‖Σ A_h†A_h − I‖
  double completeness_right = 0.0;  // ‖Σ A_h A_h† − I‖
  std::vector<OffDiagonalResidual> off_diagonal;

  double max_residual() const;
};

UnitarityReport check_unitarity_conditions(const TransitionRule& rule, const CayleyPresentation& p);

// max over l, h of ‖U_l A_h U_l† − A_{l(h)}‖.
double check_covariance(const AutomatonDescriptor& a);

struct ExtractedRule {
  TransitionRule rule;
  double residual = 0.0;
};

/// Recovers transition matrices from a trigonometric polynomial by discrete
/// Fourier inversion on the smallest alias-free grid in group coordinates.
/// Throws SupportMismatch when the reconstruction residual exceeds `tol`.
ExtractedRule extract_transition_matrices(const std::function<CMatrix(const RealVec&)>& f,
                                          const CayleyPresentation& p, const std::vector<Label>& support,
                                          double tol = 1e-10);

struct Spectrum {
  RealVec phases;   // ascending, in (−π, π]
  CMatrix vectors;  // columns match `phases`
};

// Eigen-decomposition of a unitary matrix. Throws NonUnitary past `tol`.
Spectrum unitary_spectrum(const CMatrix& u, double tol = kEigenTol);
Spectrum spectrum(const AutomatonDescriptor& a, const RealVec& k);

// U^n through the eigen-decomposition of U.
CMatrix unitary_power(const CMatrix& u, long long n);

}  // namespace qca

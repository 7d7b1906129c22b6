#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qca/types.hpp"

namespace qca {

enum class LatticeKind { line, square_2d, bcc_3d };
enum class ZoneKind { interval_1d, square_2d, rhombic_dodecahedron_3d, wigner_seitz };

std::string to_string(LatticeKind kind);
std::string to_string(ZoneKind kind);
LatticeKind lattice_kind_from_string(std::string_view name);
ZoneKind zone_kind_from_string(std::string_view name);

// An element of S = S+ ∪ S− ∪ {e}. `generator` indexes S+; the identity has
// generator == -1 and sign == 0.
struct Label {
  int generator = -1;
  int sign = 0;

  static constexpr Label identity() { return {}; }
  static constexpr Label plus(int g) { return {g, +1}; }
  static constexpr Label minus(int g) { return {g, -1}; }

  constexpr bool is_identity() const { return generator < 0; }
  constexpr Label inverse() const { return is_identity() ? *this : Label{generator, -sign}; }

  auto operator<=>(const Label&) const = default;
};

struct Generator {
  std::string label;
  RealVec displacement;
  std::string inverse_label;
};

// Half-space normal·k <= offset.
struct HalfSpace {
  RealVec normal;
  double offset = 0.0;
};

/// First Brillouin zone as the Wigner–Seitz cell of a reciprocal lattice.
///
/// Bounds are the Voronoi-relevant reciprocal vectors b with offset |b|²/2,
/// so every face is a perpendicular bisector and the cell is a fundamental
/// domain of the reciprocal lattice.
class BrillouinZone {
 public:
  BrillouinZone(ZoneKind kind, const RealMatrix& reciprocal_basis);

  ZoneKind kind() const { return kind_; }
  const std::vector<HalfSpace>& bounds() const { return bounds_; }
  const RealMatrix& reciprocal_basis() const { return reciprocal_; }

  bool contains(const RealVec& k, double tol = 1e-12) const;
  // Exact volume, |det| of the reciprocal basis.
  double volume() const;
  // Distance from the origin to the nearest face.
  double inradius() const;

 private:
  ZoneKind kind_;
  RealMatrix reciprocal_;
  std::vector<HalfSpace> bounds_;
};

/// Presentation ⟨S+|R⟩ of Z^d with a Euclidean embedding of the generators.
///
/// Group elements are integer coordinate vectors over `free_basis`; every
/// generator has integer coordinates in that basis, and relators are
/// coefficient vectors over S+ that must sum to zero displacement.
class CayleyPresentation {
 public:
  CayleyPresentation(int dimension, std::vector<Generator> generators,
                     std::vector<std::vector<long long>> relators, std::vector<int> free_basis,
                     ZoneKind zone_kind);

  static CayleyPresentation build(LatticeKind kind);

  int dimension() const { return dimension_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<std::vector<long long>>& relators() const { return relators_; }
  const std::vector<int>& free_basis() const { return free_basis_; }
  const BrillouinZone& zone() const { return zone_; }

  // Columns are the free-basis displacements a_i.
  const RealMatrix& basis_matrix() const { return basis_; }
  // Columns b_i with b_i·a_j = 2π δ_ij.
  const RealMatrix& reciprocal_basis() const { return zone_.reciprocal_basis(); }

  // S listed as e, h1, h1^-1, h2, h2^-1, ...
  std::vector<Label> labels() const;
  std::string name(Label l) const;
  std::optional<Label> find(std::string_view name) const;
  Label parse(std::string_view name) const;

  IntVec coords(Label l) const;
  RealVec displacement(Label l) const;
  std::optional<Label> label_for_coords(const IntVec& c) const;

  RealVec to_cartesian(const RealVec& coords) const { return basis_ * coords; }
  // θ_i = k·a_i; e^{-ik·g} = e^{-iθ·c} for g with coordinates c.
  RealVec phases(const RealVec& k) const { return basis_.transpose() * k; }
  RealVec wave_vector(const RealVec& phases) const;

 private:
  int dimension_;
  std::vector<Generator> generators_;
  std::vector<std::vector<long long>> relators_;
  std::vector<int> free_basis_;
  RealMatrix basis_;
  std::vector<IntVec> coords_;
  BrillouinZone zone_;
};

/// Shortest word length in S between a and b (free-basis coordinates), by
/// breadth-first search. Throws RadiusExceeded past `radius`.
long long word_metric(const CayleyPresentation& p, const IntVec& a, const IntVec& b,
                      long long radius = 32);

/// Representative of k in the first Brillouin zone. Faces whose outward
/// normal has a positive first nonzero component are closed, the opposite
/// faces open.
RealVec reduce_to_zone(const CayleyPresentation& p, const RealVec& k);

/// Coset decomposition of Z^d by the sublattice spanned by the columns of
/// `subgroup_basis`.
class TilingMap {
 public:
  TilingMap(CayleyPresentation parent, IntMatrix subgroup_basis);

  const CayleyPresentation& parent() const { return parent_; }
  const IntMatrix& subgroup_basis() const { return basis_; }
  const std::vector<IntVec>& coset_reps() const { return reps_; }
  int index() const { return static_cast<int>(reps_.size()); }

  bool in_sublattice(const IntVec& x) const;
  // x = c_j + M z; returns (j, z).
  std::pair<int, IntVec> decompose(const IntVec& x) const;

 private:
  CayleyPresentation parent_;
  IntMatrix basis_;
  IntMatrix adjugate_;
  long long det_;
  std::vector<IntVec> reps_;
};

TilingMap make_tiling(const CayleyPresentation& p, const std::vector<IntVec>& subgroup_basis);

// Integer helpers for d <= 3.
long long int_det(const IntMatrix& m);
IntMatrix int_adjugate(const IntMatrix& m);

}  // namespace qca

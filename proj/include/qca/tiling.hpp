#pragma once

#include "qca/evolution.hpp"

namespace qca {

/// Presentation of the sublattice M Z^d: generators H1..Hd are the columns
/// of M, followed by one generator for each further coarse displacement in
/// `extra` (sign-normalized so the first nonzero entry is positive).
CayleyPresentation coarse_presentation(const TilingMap& t, const std::vector<IntVec>& extra = {});

/// The same automaton on the sublattice with internal dimension s·r. Coarse
/// site y, internal index i·s + l holds the fine amplitude at c_i + M y,
/// component l.
AutomatonDescriptor tile_descriptor(const AutomatonDescriptor& a, const TilingMap& t);

// Coarse lattice extent L_i / M_ii. Requires a diagonal subgroup basis whose
// entries divide the fine sizes.
std::vector<int> coarse_sizes(const LatticeSpec& fine, const TilingMap& t);

FieldState apply_tiling(const FieldState& state, const TilingMap& t, const CayleyPresentation& coarse);

// ‖apply_tiling(step(a) ψ) − step(tiled) apply_tiling(ψ)‖∞ for one step.
double commuting_square_residual(const AutomatonDescriptor& a, const AutomatonDescriptor& tiled, const TilingMap& t,
                                 const FieldState& state);

// The r fine wave vectors K + G folded onto the coarse wave vector K, with G
// running over the coarse reciprocal lattice modulo the fine one.
std::vector<RealVec> folded_wave_vectors(const TilingMap& t, const RealVec& coarse_k);

/// Distance between the eigenvalue multiset of A′_K and the union of the
/// spectra of A at the folded wave vectors, by closest unused match on the
/// unit circle.
double folded_band_residual(const AutomatonDescriptor& a, const AutomatonDescriptor& tiled, const TilingMap& t,
                            const RealVec& coarse_k);

}  // namespace qca

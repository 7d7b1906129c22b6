#pragma once

#include <vector>

#include "qca/automaton.hpp"

namespace qca {

// Finite periodic lattice: sizes[i] sites along free-basis coordinate i.
struct LatticeSpec {
  CayleyPresentation presentation;
  std::vector<int> sizes;

  LatticeSpec(CayleyPresentation p, std::vector<int> sizes);

  int dimension() const { return presentation.dimension(); }
  long long sites() const;
  // Row-major: the last coordinate varies fastest.
  IntVec site_coords(long long index) const;
  // Coordinates are wrapped periodically.
  long long site_index(const IntVec& coords) const;
  // θ_i = 2π m_i / L_i for the mode with row-major index `mode`.
  RealVec mode_phases(long long mode) const;
};

/// Single-excitation amplitudes ψ(x)_l, stored site-major with the internal
/// index fastest.
struct FieldState {
  LatticeSpec lattice;
  int internal_dim = 0;
  CVector amplitudes;
  long long time = 0;

  static FieldState zeros(const LatticeSpec& lattice, int internal_dim);

  cplx& at(long long site, int l) { return amplitudes(site * internal_dim + l); }
  cplx at(long long site, int l) const { return amplitudes(site * internal_dim + l); }
  double norm() const { return amplitudes.norm(); }
};

// One step by explicit neighbourhood sums ψ′(x) = Σ_h A_h ψ(x − h).
FieldState step_direct(const FieldState& state, const AutomatonDescriptor& a);

// `steps` steps through the wave-vector representation.
FieldState step_spectral(const FieldState& state, const AutomatonDescriptor& a, long long steps);

enum class Branch { plus, minus };

struct WavePacketSpec {
  RealVec center_k;  // Cartesian
  double sigma_k = 0.05;
  RealVec center_x;  // free-basis site coordinates
  Branch branch = Branch::plus;
};

// Distance from k to the nearest face of the Brillouin zone.
double distance_to_zone_boundary(const CayleyPresentation& p, const RealVec& k);

/// Gaussian envelope exp(−|k − k₀|²/(2σ²)) times the branch eigenvector of
/// A_k, translated to center_x and normalized. The plus branch holds the
/// lower half of the eigenphases (e^{−iω} for Weyl and Dirac automata).
/// Throws ZoneLeak when the envelope at the zone boundary exceeds 1e−12.
FieldState make_packet(const WavePacketSpec& spec, const AutomatonDescriptor& a, const LatticeSpec& lattice);

struct PacketMoments {
  RealVec mean;   // circular mean, free-basis coordinates in [0, L)
  RealVec sigma;  // circular standard deviation per coordinate
};

PacketMoments packet_moments(const FieldState& state);

// Cartesian displacement of the mean position per step. Throws
// BoundaryContact when a packet spans more than half the torus within 3σ.
RealVec measure_packet_velocity(const FieldState& before, const FieldState& after, long long steps);

void require_compatible(const LatticeSpec& lattice, const AutomatonDescriptor& a);

}  // namespace qca

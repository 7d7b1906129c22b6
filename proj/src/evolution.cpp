#include "qca/evolution.hpp"

#include <cmath>
#include <limits>

#include "lattice_fft.hpp"
#include "qca/parallel.hpp"

namespace qca {

LatticeSpec::LatticeSpec(CayleyPresentation p, std::vector<int> s) : presentation(std::move(p)), sizes(std::move(s)) {
  if (static_cast<int>(sizes.size()) != presentation.dimension()) {
    throw DimensionMismatch("lattice needs one size per dimension");
  }
  for (int n : sizes) {
    if (n < 2) throw Error("lattice sizes must be at least 2");
  }
}

long long LatticeSpec::sites() const {
  long long n = 1;
  for (int s : sizes) n *= s;
  return n;
}

IntVec LatticeSpec::site_coords(long long index) const {
  const int d = dimension();
  IntVec c(d);
  for (int i = d - 1; i >= 0; --i) {
    const int n = sizes[static_cast<std::size_t>(i)];
    c(i) = index % n;
    index /= n;
  }
  return c;
}

long long LatticeSpec::site_index(const IntVec& coords) const {
  long long idx = 0;
  for (int i = 0; i < dimension(); ++i) {
    const long long n = sizes[static_cast<std::size_t>(i)];
    long long c = coords(i) % n;
    if (c < 0) c += n;
    idx = idx * n + c;
  }
  return idx;
}

RealVec LatticeSpec::mode_phases(long long mode) const {
  const IntVec m = site_coords(mode);
  RealVec theta(dimension());
  for (int i = 0; i < dimension(); ++i) {
    theta(i) = 2.0 * kPi * static_cast<double>(m(i)) / sizes[static_cast<std::size_t>(i)];
  }
  return theta;
}

FieldState FieldState::zeros(const LatticeSpec& lattice, int internal_dim) {
  FieldState s{lattice, internal_dim, CVector::Zero(lattice.sites() * internal_dim), 0};
  return s;
}

void require_compatible(const LatticeSpec& lattice, const AutomatonDescriptor& a) {
  const auto& p = lattice.presentation;
  const auto& q = a.presentation;
  bool same = p.dimension() == q.dimension() && p.generators().size() == q.generators().size() &&
              (p.basis_matrix() - q.basis_matrix()).norm() < 1e-12;
  for (std::size_t i = 0; same && i < p.generators().size(); ++i) {
    same = (p.generators()[i].displacement - q.generators()[i].displacement).norm() < 1e-12;
  }
  if (!same) throw DimensionMismatch("lattice presentation does not match the automaton");
}

namespace {

void require_state(const FieldState& state, const AutomatonDescriptor& a) {
  require_compatible(state.lattice, a);
  if (state.internal_dim != a.internal_dim()) throw DimensionMismatch("internal dimension mismatch");
  if (state.amplitudes.size() != state.lattice.sites() * state.internal_dim) {
    throw DimensionMismatch("amplitude array has wrong length");
  }
}

CMatrix power(const CMatrix& u, long long steps) {
  if (steps > 16) return unitary_power(u, steps);
  CMatrix out = CMatrix::Identity(u.rows(), u.cols());
  for (long long i = 0; i < steps; ++i) out = u * out;
  return out;
}

}  // namespace

FieldState step_direct(const FieldState& state, const AutomatonDescriptor& a) {
  require_state(state, a);
  const auto& lat = state.lattice;
  const int s = state.internal_dim;
  FieldState out = FieldState::zeros(lat, s);
  out.time = state.time + 1;

  std::vector<std::pair<IntVec, CMatrix>> terms;
  for (const auto& [h, m] : a.rule.entries) terms.emplace_back(lat.presentation.coords(h), m);

  parallel_for(static_cast<std::size_t>(lat.sites()), [&](std::size_t site) {
    const IntVec x = lat.site_coords(static_cast<long long>(site));
    CVector acc = CVector::Zero(s);
    for (const auto& [c, m] : terms) {
      const long long src = lat.site_index(x - c);
      acc += m * state.amplitudes.segment(src * s, s);
    }
    out.amplitudes.segment(static_cast<Eigen::Index>(site) * s, s) = acc;
  });
  return out;
}

FieldState step_spectral(const FieldState& state, const AutomatonDescriptor& a, long long steps) {
  require_state(state, a);
  if (steps < 0) throw Error("step count must be non-negative");
  FieldState out = state;
  out.time = state.time + steps;
  if (steps == 0) return out;

  const auto& lat = state.lattice;
  const int s = state.internal_dim;
  detail::LatticeFFT fft(lat.sizes, s);
  fft.forward(out.amplitudes);
  parallel_for(static_cast<std::size_t>(lat.sites()), [&](std::size_t mode) {
    const RealVec k = lat.presentation.wave_vector(lat.mode_phases(static_cast<long long>(mode)));
    const CMatrix u = power(assemble_k_operator(a, k), steps);
    auto block = out.amplitudes.segment(static_cast<Eigen::Index>(mode) * s, s);
    block = (u * block).eval();
  });
  fft.backward(out.amplitudes);
  out.amplitudes /= static_cast<double>(lat.sites());
  return out;
}

double distance_to_zone_boundary(const CayleyPresentation& p, const RealVec& k) {
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& h : p.zone().bounds()) {
    dist = std::min(dist, (h.offset - h.normal.dot(k)) / h.normal.norm());
  }
  return dist;
}

FieldState make_packet(const WavePacketSpec& spec, const AutomatonDescriptor& a, const LatticeSpec& lattice) {
  require_compatible(lattice, a);
  const auto& p = lattice.presentation;
  const int d = p.dimension();
  const int s = a.internal_dim();
  if (spec.center_k.size() != d || spec.center_x.size() != d) {
    throw DimensionMismatch("packet centre has wrong dimension");
  }
  if (!(spec.sigma_k > 0.0)) throw Error("sigma_k must be positive");
  const double boundary = distance_to_zone_boundary(p, spec.center_k);
  const double leak = boundary <= 0.0 ? 1.0 : std::exp(-boundary * boundary / (2.0 * spec.sigma_k * spec.sigma_k));
  if (leak > 1e-12) {
    throw ZoneLeak("packet envelope at the zone boundary is " + std::to_string(leak) + " (> 1e-12)");
  }

  const int half = s / 2;
  const int first = spec.branch == Branch::plus ? 0 : s - half;
  auto branch_projector = [&](const RealVec& k) {
    const Spectrum sp = spectrum(a, k);
    const CMatrix v = sp.vectors.middleCols(first, half);
    return CMatrix(v * v.adjoint());
  };
  const CVector v0 = spectrum(a, spec.center_k).vectors.col(first);

  FieldState out = FieldState::zeros(lattice, s);
  parallel_for(static_cast<std::size_t>(lattice.sites()), [&](std::size_t mode) {
    const RealVec k = p.wave_vector(lattice.mode_phases(static_cast<long long>(mode)));
    const RealVec dk = reduce_to_zone(p, k - spec.center_k);
    const double env = std::exp(-dk.squaredNorm() / (2.0 * spec.sigma_k * spec.sigma_k));
    if (env < 1e-300) return;
    const RealVec keff = spec.center_k + dk;
    CVector w = branch_projector(keff) * v0;
    const double wn = w.norm();
    if (wn < 1e-12) return;
    const double phase = -p.phases(keff).dot(spec.center_x);
    out.amplitudes.segment(static_cast<Eigen::Index>(mode) * s, s) = (env * std::polar(1.0, phase) / wn) * w;
  });

  detail::LatticeFFT fft(lattice.sizes, s);
  fft.backward(out.amplitudes);
  const double norm = out.amplitudes.norm();
  if (norm == 0.0) throw Error("packet has no support on the lattice mode grid");
  out.amplitudes /= norm;
  return out;
}

PacketMoments packet_moments(const FieldState& state) {
  const auto& lat = state.lattice;
  const int d = lat.dimension();
  const int s = state.internal_dim;
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(d);
  double total = 0.0;
  for (long long site = 0; site < lat.sites(); ++site) {
    const double prob = state.amplitudes.segment(site * s, s).squaredNorm();
    if (prob == 0.0) continue;
    total += prob;
    const IntVec x = lat.site_coords(site);
    for (int i = 0; i < d; ++i) {
      z(i) += prob * std::polar(1.0, 2.0 * kPi * static_cast<double>(x(i)) / lat.sizes[static_cast<std::size_t>(i)]);
    }
  }
  if (total == 0.0) throw Error("state has zero norm");
  PacketMoments m{RealVec(d), RealVec(d)};
  for (int i = 0; i < d; ++i) {
    const double l = lat.sizes[static_cast<std::size_t>(i)];
    const cplx zi = z(i) / total;
    double mean = std::arg(zi) * l / (2.0 * kPi);
    if (mean < 0.0) mean += l;
    m.mean(i) = mean;
    const double r = std::min(1.0, std::abs(zi));
    m.sigma(i) = r > 0.0 ? l / (2.0 * kPi) * std::sqrt(-2.0 * std::log(r)) : std::numeric_limits<double>::infinity();
  }
  return m;
}

RealVec measure_packet_velocity(const FieldState& before, const FieldState& after, long long steps) {
  if (before.lattice.sizes != after.lattice.sizes || before.internal_dim != after.internal_dim) {
    throw DimensionMismatch("states live on different lattices");
  }
  if (steps <= 0) throw Error("step count must be positive");
  const auto& lat = before.lattice;
  const PacketMoments m0 = packet_moments(before);
  const PacketMoments m1 = packet_moments(after);
  RealVec delta(lat.dimension());
  for (int i = 0; i < lat.dimension(); ++i) {
    const double l = lat.sizes[static_cast<std::size_t>(i)];
    if (3.0 * std::max(m0.sigma(i), m1.sigma(i)) >= l / 2.0) {
      throw BoundaryContact("packet reaches the periodic seam along coordinate " + std::to_string(i));
    }
    double dx = m1.mean(i) - m0.mean(i);
    dx -= l * std::round(dx / l);
    delta(i) = dx;
  }
  return lat.presentation.basis_matrix() * delta / static_cast<double>(steps);
}

}  // namespace qca

#include "qca/fock.hpp"

#include <cmath>

#include "qca/maxwell.hpp"

namespace qca {

FockOracle::FockOracle(int n_k)
    : FockOracle(std::vector<cplx>(static_cast<std::size_t>(std::max(n_k, 1)),
                                   cplx(1.0 / std::sqrt(static_cast<double>(std::max(n_k, 1)))))) {
  if (n_k < 1) throw Error("region must contain at least one mode");
}

FockOracle::FockOracle(std::vector<cplx> profile) : profile_(std::move(profile)) {
  if (profile_.empty()) throw Error("region must contain at least one mode");
  if (n_modes() > kMaxModes) {
    throw Error("mode count too large: " + std::to_string(n_modes()) + " > " + std::to_string(kMaxModes));
  }
  double total = 0.0;
  for (const auto& f : profile_) total += std::norm(f);
  if (std::abs(total - 1.0) > 1e-12) throw Error("profile must be normalized");
}

FockOracle::State FockOracle::vacuum() { return {{Occupation{}, cplx(1.0)}}; }

FockOracle::State FockOracle::filled(int m) const {
  if (m < 0 || m > n_k()) throw Error("fill must lie in [0, N_k]");
  Occupation occ;
  for (int q = 0; q < m; ++q) {
    occ.set(static_cast<std::size_t>(mode(Field::psi, q, 0)));
    occ.set(static_cast<std::size_t>(mode(Field::phi, q, 0)));
  }
  return {{occ, cplx(1.0)}};
}

namespace {

double jordan_wigner_sign(const FockOracle::Occupation& occ, int mode) {
  int below = 0;
  for (int i = 0; i < mode; ++i) below += occ.test(static_cast<std::size_t>(i)) ? 1 : 0;
  return below % 2 == 0 ? 1.0 : -1.0;
}

void accumulate(FockOracle::State& out, const FockOracle::Occupation& occ, cplx amp) {
  if (amp == cplx(0.0)) return;
  auto [it, fresh] = out.try_emplace(occ, amp);
  if (!fresh) it->second += amp;
}

}  // namespace

FockOracle::State FockOracle::annihilate(int mode, const State& s) const {
  State out;
  for (const auto& [occ, amp] : s) {
    if (!occ.test(static_cast<std::size_t>(mode))) continue;
    Occupation next = occ;
    next.reset(static_cast<std::size_t>(mode));
    accumulate(out, next, jordan_wigner_sign(occ, mode) * amp);
  }
  return out;
}

FockOracle::State FockOracle::create(int mode, const State& s) const {
  State out;
  for (const auto& [occ, amp] : s) {
    if (occ.test(static_cast<std::size_t>(mode))) continue;
    Occupation next = occ;
    next.set(static_cast<std::size_t>(mode));
    accumulate(out, next, jordan_wigner_sign(occ, mode) * amp);
  }
  return out;
}

FockOracle::State FockOracle::gamma(const Vec3& u, const State& s) const {
  const Mat2 m = pauli::dot(u);
  const double norm = 1.0 / std::sqrt(2.0);
  State out;
  for (int q = 0; q < n_k(); ++q) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const cplx c = norm * profile_[static_cast<std::size_t>(q)] * m(a, b);
        if (c == cplx(0.0)) continue;
        const State t = annihilate(mode(Field::phi, q, a), annihilate(mode(Field::psi, q, b), s));
        out = add(out, t, c);
      }
    }
  }
  return out;
}

FockOracle::State FockOracle::gamma_dagger(const Vec3& u, const State& s) const {
  // (φ_a ψ_b)† = ψ_b† φ_a†
  const Mat2 m = pauli::dot(u);
  const double norm = 1.0 / std::sqrt(2.0);
  State out;
  for (int q = 0; q < n_k(); ++q) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const cplx c = norm * std::conj(profile_[static_cast<std::size_t>(q)] * m(a, b));
        if (c == cplx(0.0)) continue;
        const State t = create(mode(Field::psi, q, b), create(mode(Field::phi, q, a), s));
        out = add(out, t, c);
      }
    }
  }
  return out;
}

double FockOracle::commutator_deviation(const Vec3& ui, const Vec3& uj, bool same_polarization,
                                        const State& s) const {
  State r = add(gamma(ui, gamma_dagger(uj, s)), gamma_dagger(uj, gamma(ui, s)), -1.0);
  if (same_polarization) r = add(r, s, -1.0);
  return norm(r);
}

double FockOracle::epsilon(const State& s) const {
  double total = 0.0, psi = 0.0, phi = 0.0;
  for (const auto& [occ, amp] : s) {
    const double w = std::norm(amp);
    total += w;
    for (int q = 0; q < n_k(); ++q) {
      for (int spin = 0; spin < 2; ++spin) {
        if (occ.test(static_cast<std::size_t>(mode(Field::psi, q, spin)))) psi += w;
        if (occ.test(static_cast<std::size_t>(mode(Field::phi, q, spin)))) phi += w;
      }
    }
  }
  if (total == 0.0) return 0.0;
  return std::max(psi, phi) / total / n_k();
}

double FockOracle::anticommutator_residual(const State& s) const {
  double worst = 0.0;
  for (int i = 0; i < n_modes(); ++i) {
    for (int j = 0; j < n_modes(); ++j) {
      State r = add(annihilate(i, create(j, s)), create(j, annihilate(i, s)));
      if (i == j) r = add(r, s, -1.0);
      worst = std::max(worst, norm(r));
    }
  }
  return worst;
}

double norm(const FockOracle::State& s) {
  double total = 0.0;
  for (const auto& [occ, amp] : s) total += std::norm(amp);
  return std::sqrt(total);
}

FockOracle::State add(const FockOracle::State& a, const FockOracle::State& b, cplx scale_b) {
  FockOracle::State out = a;
  for (const auto& [occ, amp] : b) accumulate(out, occ, scale_b * amp);
  return out;
}

FockDeviation fock_commutator_deviation(int n_k, int fill) {
  const FockOracle oracle(n_k);
  const auto state = oracle.filled(fill);
  const auto [u1, u2] = polarization_basis(Vec3::UnitZ());
  FockDeviation d;
  d.n_k = n_k;
  d.fill = fill;
  d.epsilon = oracle.epsilon(state);
  d.same = oracle.commutator_deviation(u1, u1, true, state);
  d.cross = oracle.commutator_deviation(u1, u2, false, state);
  return d;
}

}  // namespace qca

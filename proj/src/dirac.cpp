#include "qca/dirac.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "qca/cayley.hpp"

namespace qca {

void validate(const DiracDescriptor& dd) {
  validate(dd.weyl);
  if (!(dd.mass >= 0.0 && dd.mass <= 1.0)) throw Error("mass must lie in [0, 1]");
}

namespace gamma {

Mat4 g0() {
  Mat4 g = Mat4::Zero();
  g.topRightCorner<2, 2>() = Mat2::Identity();
  g.bottomLeftCorner<2, 2>() = Mat2::Identity();
  return g;
}

std::array<Mat4, 3> gj() {
  std::array<Mat4, 3> out;
  const auto s = pauli::sigma();
  for (std::size_t j = 0; j < 3; ++j) {
    out[j] = Mat4::Zero();
    out[j].topRightCorner<2, 2>() = s[j];
    out[j].bottomLeftCorner<2, 2>() = -s[j];
  }
  return out;
}

std::array<Mat4, 3> g0gj() {
  std::array<Mat4, 3> out;
  const Mat4 g = g0();
  const auto gs = gj();
  for (std::size_t j = 0; j < 3; ++j) out[j] = g * gs[j];
  return out;
}

}  // namespace gamma

namespace {

Mat4 g0g_dot(const Vec3& v) {
  const auto g = gamma::g0gj();
  return cplx(v(0)) * g[0] + cplx(v(1)) * g[1] + cplx(v(2)) * g[2];
}

}  // namespace

Mat4 dirac_matrix(const DiracDescriptor& dd, const RealVec& k) {
  validate(dd);
  const Mat2 w = weyl_matrix(dd.weyl, k);
  Mat4 d;
  d.topLeftCorner<2, 2>() = dd.n() * w.adjoint();
  d.bottomRightCorner<2, 2>() = dd.n() * w;
  d.topRightCorner<2, 2>() = kI * dd.mass * Mat2::Identity();
  d.bottomLeftCorner<2, 2>() = kI * dd.mass * Mat2::Identity();
  return d;
}

double dirac_omega(const DiracDescriptor& dd, const RealVec& k) {
  validate(dd);
  const auto s = weyl_symbol(dd.weyl, k);
  const double n = dd.n();
  const double sin_omega = std::sqrt(n * n * s.n_tilde.squaredNorm() + dd.mass * dd.mass);
  return std::atan2(sin_omega, n * s.u);
}

DispersionSample dirac_dispersion(const DiracDescriptor& dd, const RealVec& k) {
  DispersionSample out;
  out.k = k;
  out.omega_plus = dirac_omega(dd, k);
  out.omega_minus = -out.omega_plus;
  const double sin_omega = std::sin(out.omega_plus);
  if (sin_omega == 0.0) {
    out.group_velocity = RealVec::Zero(k.size());
  } else {
    // cos ω = n u, so ∇ω = n sin ω_W ∇ω_W / sin ω with ∇u = −sin ω_W ∇ω_W.
    const auto s = weyl_symbol(dd.weyl, k);
    const RealVec grad_u = -s.n_tilde.norm() * weyl_group_velocity(dd.weyl, k);
    out.group_velocity = -dd.n() * grad_u / sin_omega;
  }
  out.helicity = dd.n() * omega_over_sin(out.omega_plus) * weyl_symbol(dd.weyl, k).n_tilde;
  return out;
}

Mat4 dirac_interpolating_hamiltonian(const DiracDescriptor& dd, const RealVec& k) {
  const double omega = dirac_omega(dd, k);
  if (kPi - omega < 1e-6) {
    throw BranchPoint("omega is at the logarithm branch point (pi - omega = " +
                      std::to_string(kPi - omega) + ")");
  }
  const auto s = weyl_symbol(dd.weyl, k);
  const double f = omega_over_sin(omega);
  return f * (dd.n() * g0g_dot(s.n_tilde) - dd.mass * gamma::g0());
}

double dirac_f0(double mass) {
  if (mass < 1e-4) return 1.0 + mass * mass / 6.0;
  return std::asin(mass) / mass;
}

Mat4 dirac_small_k_hamiltonian(const DiracDescriptor& dd, const RealVec& k) {
  validate(dd);
  if (k.size() != dd.weyl.dimension) throw DimensionMismatch("wave vector dimension does not match the variant");
  const Vec3 jk = weyl_jacobian_at_origin(dd.weyl) * k;
  return dirac_f0(dd.mass) * (dd.n() * g0g_dot(jk) - dd.mass * gamma::g0());
}

// ---------------------------------------------------------------------------
// Coupling probe

Mat4 Coupling::matrix(const Mat2& w) const {
  Mat4 d;
  d.topLeftCorner<2, 2>() = p * w.adjoint();
  d.topRightCorner<2, 2>() = q * x;
  d.bottomLeftCorner<2, 2>() = r * y;
  d.bottomRightCorner<2, 2>() = t * w;
  return d;
}

double coupling_unitarity_residual(const Coupling& c, const WeylVariant& weyl,
                                   const std::vector<RealVec>& k_samples) {
  double worst = 0.0;
  for (const auto& k : k_samples) {
    const Mat4 d = c.matrix(weyl_matrix(weyl, k));
    worst = std::max(worst, max_abs(d.adjoint() * d - Mat4::Identity()));
  }
  return worst;
}

std::string to_string(CouplingClass c) {
  switch (c) {
    case CouplingClass::mass_family: return "mass_family";
    case CouplingClass::block_phase: return "block_phase";
    case CouplingClass::k_independent: return "k_independent";
    case CouplingClass::other: return "other";
  }
  return "?";
}

CouplingClass classify_coupling(const Coupling& c, double tol) {
  if (std::abs(c.p) < tol && std::abs(c.t) < tol) return CouplingClass::k_independent;
  const Mat2 qx = c.q * c.x;
  const Mat2 ry = c.r * c.y;
  const cplx mu = qx.trace() / 2.0;
  const cplx nu = ry.trace() / 2.0;
  const bool scalar = max_abs(qx - mu * Mat2::Identity()) < tol && max_abs(ry - nu * Mat2::Identity()) < tol;
  const double n = std::abs(c.p);
  const bool moduli = std::abs(std::abs(c.t) - n) < tol && std::abs(std::abs(mu) - std::abs(nu)) < tol &&
                      std::abs(n * n + std::abs(mu) * std::abs(mu) - 1.0) < tol;
  if (!scalar || !moduli) return CouplingClass::other;
  // Conjugation by diag(e^{ia} I, e^{ib} I) and a global phase reach p = t = n
  // only when p and t share their phase.
  if (n > tol && std::abs(std::arg(c.p / c.t)) > tol) return CouplingClass::block_phase;
  return CouplingClass::mass_family;
}

namespace {

Coupling unpack(const Eigen::VectorXd& x) {
  Coupling c;
  c.p = {x(0), x(1)};
  c.q = {x(2), x(3)};
  c.r = {x(4), x(5)};
  c.t = {x(6), x(7)};
  for (int i = 0; i < 4; ++i) {
    c.x(i / 2, i % 2) = {x(8 + 2 * i), x(9 + 2 * i)};
    c.y(i / 2, i % 2) = {x(16 + 2 * i), x(17 + 2 * i)};
  }
  return c;
}

struct DefectFunctor : Eigen::DenseFunctor<double> {
  std::vector<Mat2> ws;

  explicit DefectFunctor(std::vector<Mat2> w)
      : Eigen::DenseFunctor<double>(24, static_cast<int>(32 * w.size())), ws(std::move(w)) {}

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const Coupling c = unpack(x);
    for (std::size_t s = 0; s < ws.size(); ++s) {
      const Mat4 d = c.matrix(ws[s]);
      const Mat4 defect = d.adjoint() * d - Mat4::Identity();
      for (int i = 0; i < 16; ++i) {
        f(static_cast<Eigen::Index>(32 * s + 2 * i)) = defect(i / 4, i % 4).real();
        f(static_cast<Eigen::Index>(32 * s + 2 * i + 1)) = defect(i / 4, i % 4).imag();
      }
    }
    return 0;
  }
};

}  // namespace

ProbeReport dirac_uniqueness_probe(const WeylVariant& weyl, int seeds, std::uint64_t seed, int k_count,
                                   double converged_tol) {
  validate(weyl);
  const auto p = CayleyPresentation::build(weyl.lattice());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::uniform_real_distribution<double> start(-1.0, 1.0);

  std::vector<RealVec> ks;
  std::vector<Mat2> ws;
  for (int i = 0; i < k_count; ++i) {
    RealVec theta(weyl.dimension);
    for (int j = 0; j < weyl.dimension; ++j) theta(j) = phase(rng);
    ks.push_back(reduce_to_zone(p, p.wave_vector(theta)));
    ws.push_back(weyl_matrix(weyl, ks.back()));
  }

  ProbeReport rep;
  rep.seeds = seeds;
  rep.k_samples = k_count;
  rep.best_off_family_residual = std::numeric_limits<double>::infinity();
  for (int s = 0; s < seeds; ++s) {
    Eigen::VectorXd x(24);
    for (int i = 0; i < 24; ++i) x(i) = start(rng);
    DefectFunctor functor(ws);
    Eigen::NumericalDiff<DefectFunctor> numdiff(functor);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<DefectFunctor>> lm(numdiff);
    lm.setMaxfev(4000);
    lm.setXtol(1e-15);
    lm.setFtol(1e-15);
    lm.minimize(x);

    const Coupling c = unpack(x);
    const double res = coupling_unitarity_residual(c, weyl, ks);
    const CouplingClass cls = classify_coupling(c);
    if (cls != CouplingClass::mass_family) {
      rep.best_off_family_residual = std::min(rep.best_off_family_residual, res);
    }
    if (res >= converged_tol) continue;
    ++rep.converged;
    switch (cls) {
      case CouplingClass::mass_family:
        ++rep.in_family;
        rep.worst_in_family_residual = std::max(rep.worst_in_family_residual, res);
        break;
      case CouplingClass::block_phase: ++rep.block_phase; break;
      case CouplingClass::k_independent: ++rep.k_independent; break;
      case CouplingClass::other: ++rep.other; break;
    }
  }
  return rep;
}

}  // namespace qca

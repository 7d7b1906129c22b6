#include "qca/maxwell.hpp"

#include <cmath>
#include <random>

namespace qca {

Vec3c bilinear_G(const Vec2c& psi, const Vec2c& phi) {
  const auto s = pauli::sigma();
  Vec3c g;
  for (int i = 0; i < 3; ++i) g(i) = phi.transpose() * s[static_cast<std::size_t>(i)] * psi;
  return g;
}

Vec3c transverse_project(const Vec3c& g, const Vec3& n) {
  const double len = n.norm();
  if (len == 0.0) throw Error("helicity direction is undefined at k = 0");
  const Vec3c nh = (n / len).cast<cplx>();
  return g - (nh.transpose() * g)(0) * nh;
}

Vec3c transverse_project(const Vec3c& g, const WeylVariant& v, const RealVec& k) {
  if (k.isZero()) throw Error("helicity direction is undefined at k = 0");
  return transverse_project(g, weyl_helicity(v, 0.5 * k));
}

std::array<Eigen::Matrix3cd, 3> angular_momentum_matrices() {
  std::array<Eigen::Matrix3cd, 3> j;
  for (int k = 0; k < 3; ++k) {
    j[static_cast<std::size_t>(k)].setZero();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        // ε_{kab} for indices in {0,1,2}.
        const int eps = (k - a) * (a - b) * (b - k) / 2;
        j[static_cast<std::size_t>(k)](a, b) = -kI * static_cast<double>(eps);
      }
    }
  }
  return j;
}

Eigen::Matrix3d rotation_exp(const Vec3& v) {
  const double angle = v.norm();
  if (angle == 0.0) return Eigen::Matrix3d::Identity();
  return Eigen::AngleAxisd(angle, v / angle).toRotationMatrix();
}

namespace {

// e^{i (s/2) v·σ}
Mat2 half_spin_exp(const Vec3& v, double s) {
  const double angle = v.norm();
  if (angle == 0.0) return Mat2::Identity();
  return std::cos(angle / 2.0) * Mat2::Identity() + kI * s * std::sin(angle / 2.0) * pauli::dot(v / angle);
}

double identity_residual(const Vec3& v, double sign) {
  const auto s = pauli::sigma();
  const Eigen::Matrix3d r = rotation_exp(v);
  const Mat2 left = half_spin_exp(v, sign);
  const Mat2 right = half_spin_exp(v, -sign);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Mat2 lhs = left * s[static_cast<std::size_t>(i)] * right;
    Mat2 rhs = Mat2::Zero();
    for (int j = 0; j < 3; ++j) rhs += r(i, j) * s[static_cast<std::size_t>(j)];
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return worst;
}

}  // namespace

double angular_momentum_identity_residual(const Vec3& v) { return identity_residual(v, 1.0); }

double angular_momentum_identity_residual_reversed(const Vec3& v) { return identity_residual(v, -1.0); }

std::pair<Vec3, Vec3> polarization_basis(const Vec3& n) {
  const double len = n.norm();
  if (len == 0.0) throw Error("polarization basis is undefined for n = 0");
  const Vec3 nh = n / len;
  Vec3 a = Vec3::UnitZ();
  if (nh.cross(a).norm() < 1e-6) a = Vec3::UnitY();
  const Vec3 u1 = a.cross(nh).normalized();
  const Vec3 u2 = nh.cross(u1);
  return {u1, u2};
}

std::pair<Vec3, Vec3> polarization_basis(const WeylVariant& v, const RealVec& k) {
  if (k.isZero()) throw Error("polarization basis is undefined at k = 0");
  return polarization_basis(weyl_helicity(v, k));
}

TwoFieldState plane_wave_pair(const WeylVariant& v, const RealVec& k, std::uint64_t seed, int size) {
  validate(v);
  if (k.size() != v.dimension) throw DimensionMismatch("wave vector has wrong dimension");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto spinor = [&] {
    Vec2c z(cplx(gauss(rng), gauss(rng)), cplx(gauss(rng), gauss(rng)));
    return Vec2c(z / z.norm());
  };
  const LatticeSpec lat(CayleyPresentation::build(v.lattice()), std::vector<int>(static_cast<std::size_t>(v.dimension), size));
  const RealVec theta = lat.presentation.phases(0.5 * k);
  TwoFieldState s{FieldState::zeros(lat, 2), FieldState::zeros(lat, 2), v};
  for (FieldState* f : {&s.psi, &s.phi}) {
    const Vec2c a = spinor();
    const Vec2c b = spinor();
    for (long long site = 0; site < lat.sites(); ++site) {
      const double ph = theta.dot(lat.site_coords(site).cast<double>());
      f->amplitudes.segment<2>(site * 2) = std::polar(1.0, ph) * a + std::polar(1.0, -ph) * b;
    }
    f->amplitudes /= f->amplitudes.norm();
  }
  return s;
}

AutomatonDescriptor conjugate_automaton(const AutomatonDescriptor& a) {
  AutomatonDescriptor out{a.presentation, {a.rule.internal_dim, {}}, std::nullopt};
  for (const auto& [h, m] : a.rule.entries) out.rule.entries.emplace(h.inverse(), m.conjugate());
  return out;
}

Vec2c fourier_mode(const FieldState& state, const RealVec& k) {
  if (state.internal_dim != 2) throw DimensionMismatch("Maxwell fields need internal dimension 2");
  const auto& lat = state.lattice;
  const RealVec theta = lat.presentation.phases(k);
  Vec2c acc = Vec2c::Zero();
  for (long long site = 0; site < lat.sites(); ++site) {
    const double ph = -theta.dot(lat.site_coords(site).cast<double>());
    acc += std::polar(1.0, ph) * state.amplitudes.segment<2>(site * 2);
  }
  return acc / std::sqrt(static_cast<double>(lat.sites()));
}

ModeAmplitudes evolve_mode(const TwoFieldState& s, const RealVec& half_k, double t) {
  const Vec3 n = weyl_helicity(s.weyl, half_k);
  const double len = n.norm();
  Mat2 u = Mat2::Identity();
  if (len > 0.0) {
    u = std::cos(len * t) * Mat2::Identity() - kI * std::sin(len * t) * pauli::dot(n / len);
  }
  return {u * fourier_mode(s.psi, half_k), u.conjugate() * fourier_mode(s.phi, half_k)};
}

namespace {

// Eigen's cross() conjugates complex results, so spell it out.
Vec3c cross(const Vec3& n, const Vec3c& g) {
  return {n(1) * g(2) - n(2) * g(1), n(2) * g(0) - n(0) * g(2), n(0) * g(1) - n(1) * g(0)};
}

cplx dot(const Vec3& n, const Vec3c& g) { return (n.cast<cplx>().transpose() * g)(0); }

Vec3c transverse_at(const TwoFieldState& s, const RealVec& k, double t) {
  const RealVec half = 0.5 * k;
  const auto m = evolve_mode(s, half, t);
  return transverse_project(bilinear_G(m.psi, m.phi), weyl_helicity(s.weyl, half));
}

}  // namespace

BilinearField bilinear_field(const TwoFieldState& s, const RealVec& k, double t) {
  if (k.isZero()) throw Error("Maxwell fields are undefined at k = 0");
  const RealVec half = 0.5 * k;
  const auto m = evolve_mode(s, half, t);
  BilinearField f;
  f.k = k;
  f.g = bilinear_G(m.psi, m.phi);
  const Vec3 n = weyl_helicity(s.weyl, half);
  f.g_t = transverse_project(f.g, n);
  // G_T† at the operator level maps k to −k.
  const Vec3c partner = transverse_at(s, -k, t).conjugate();
  f.e = n.norm() * (f.g_t + partner);
  f.b = kI * n.norm() * (partner - f.g_t);
  return f;
}

double MaxwellReport::max_residual() const {
  return std::max({rotation, gauss_e, gauss_b, ampere, faraday, transversality, rotation_form});
}

MaxwellReport maxwell_residual(const TwoFieldState& s, const RealVec& k, double t, double dt) {
  if (k.isZero()) throw Error("Maxwell residual is undefined at k = 0");
  if (!(dt > 0.0)) throw Error("finite-difference step must be positive");
  const Vec3 n = weyl_helicity(s.weyl, 0.5 * k);
  const Vec3 two_n = 2.0 * n;
  const auto now = bilinear_field(s, k, t);
  const auto fwd = bilinear_field(s, k, t + dt);
  const auto bwd = bilinear_field(s, k, t - dt);
  const auto start = bilinear_field(s, k, 0.0);

  MaxwellReport r;
  const Vec3c dg = (fwd.g_t - bwd.g_t) / (2.0 * dt);
  const Vec3c de = (fwd.e - bwd.e) / (2.0 * dt);
  const Vec3c db = (fwd.b - bwd.b) / (2.0 * dt);
  r.rotation = max_abs(dg - cross(two_n, now.g_t));
  r.gauss_e = std::abs(dot(two_n, now.e));
  r.gauss_b = std::abs(dot(two_n, now.b));
  r.ampere = max_abs(de - kI * cross(two_n, now.b));
  r.faraday = max_abs(db + kI * cross(two_n, now.e));
  r.transversality = std::abs(dot(n, now.g_t));
  r.rotation_form = max_abs(now.g_t - rotation_exp(two_n * t).cast<cplx>() * start.g_t);
  r.parity_defect = (n + weyl_helicity(s.weyl, -0.5 * k)).norm();
  return r;
}

double rotation_generator_deviation(const WeylVariant& v, const RealVec& k) {
  const Vec3 lin = weyl_jacobian_at_origin(v) * k;
  if (lin.norm() == 0.0) throw Error("generator deviation is undefined at k = 0");
  return (2.0 * weyl_helicity(v, 0.5 * k) - lin).norm() / lin.norm();
}

}  // namespace qca

#include "qca/weyl.hpp"

#include <cmath>

#include <unsupported/Eigen/AutoDiff>

namespace qca {

namespace {

using Grad = Eigen::VectorXd;
using Dual = Eigen::AutoDiffScalar<Grad>;

template <typename T>
struct Symbol {
  T u;
  std::array<T, 3> n;
};

// Closed forms in terms of c_i = cos(k_i/√d), s_i = sin(k_i/√d).
template <typename T>
Symbol<T> raw_symbol(const WeylVariant& v, const std::vector<T>& k) {
  using std::cos;
  using std::sin;
  const double scale = 1.0 / std::sqrt(static_cast<double>(v.dimension));
  Symbol<T> out;
  switch (v.dimension) {
    case 1: {
      out.u = cos(k[0]);
      out.n = {T(0.0), T(0.0), sin(k[0])};
      break;
    }
    case 2: {
      const T cx = cos(k[0] * scale), cy = cos(k[1] * scale);
      const T sx = sin(k[0] * scale), sy = sin(k[1] * scale);
      out.u = cx * cy;
      out.n = {sx * cy, cx * sy, sx * sy};
      if (v.theta != 0.0) {
        // (cos θ I + i sin θ σx)(u I − i σ·ñ)
        const double ct = std::cos(v.theta), st = std::sin(v.theta);
        const T u = out.u;
        const auto n = out.n;
        out.u = ct * u + st * n[0];
        out.n = {ct * n[0] - st * u, ct * n[1] + st * n[2], ct * n[2] - st * n[1]};
      }
      break;
    }
    case 3: {
      const T cx = cos(k[0] * scale), cy = cos(k[1] * scale), cz = cos(k[2] * scale);
      const T sx = sin(k[0] * scale), sy = sin(k[1] * scale), sz = sin(k[2] * scale);
      const bool plus = v.family == WeylFamily::a_plus || v.family == WeylFamily::b_plus;
      const double sg = plus ? 1.0 : -1.0;
      out.u = cx * cy * cz + sg * (sx * sy * sz);
      out.n = {sx * cy * cz - sg * (cx * sy * sz), -sg * (cx * sy * cz) - sx * cy * sz,
               cx * cy * sz - sg * (sx * sy * cz)};
      break;
    }
    default: throw Error("Weyl automata exist for d = 1, 2, 3 only");
  }
  if (v.is_transposed()) out.n[1] = -out.n[1];
  return out;
}

std::vector<Dual> seeded(const RealVec& k) {
  const Eigen::Index d = k.size();
  std::vector<Dual> out;
  for (Eigen::Index i = 0; i < d; ++i) out.emplace_back(k(i), d, i);
  return out;
}

RealVec grad(const Dual& x, Eigen::Index d) {
  if (x.derivatives().size() == 0) return RealVec::Zero(d);
  return x.derivatives();
}

void check_k(const WeylVariant& v, const RealVec& k) {
  validate(v);
  if (k.size() != v.dimension) throw DimensionMismatch("wave vector dimension does not match the variant");
}

}  // namespace

LatticeKind WeylVariant::lattice() const {
  switch (dimension) {
    case 1: return LatticeKind::line;
    case 2: return LatticeKind::square_2d;
    default: return LatticeKind::bcc_3d;
  }
}

std::string WeylVariant::name() const {
  switch (family) {
    case WeylFamily::a_plus: return "bcc-a-plus";
    case WeylFamily::a_minus: return "bcc-a-minus";
    case WeylFamily::b_plus: return "bcc-b-plus";
    case WeylFamily::b_minus: return "bcc-b-minus";
    case WeylFamily::a: return "weyl-2d";
    case WeylFamily::b: return "weyl-2d-b";
    case WeylFamily::unique: return "weyl-1d";
  }
  return "?";
}

void validate(const WeylVariant& v) {
  bool ok = false;
  switch (v.family) {
    case WeylFamily::a_plus:
    case WeylFamily::a_minus:
    case WeylFamily::b_plus:
    case WeylFamily::b_minus: ok = v.dimension == 3; break;
    case WeylFamily::a:
    case WeylFamily::b: ok = v.dimension == 2; break;
    case WeylFamily::unique: ok = v.dimension == 1; break;
  }
  if (!ok) throw Error("Weyl family does not exist in dimension " + std::to_string(v.dimension));
  if (v.dimension != 2 && v.theta != 0.0) throw Error("theta applies to the 2D family only");
}

WeylSymbol weyl_symbol(const WeylVariant& v, const RealVec& k) {
  check_k(v, k);
  const std::vector<double> kk(k.data(), k.data() + k.size());
  const auto s = raw_symbol(v, kk);
  return {s.u, Vec3(s.n[0], s.n[1], s.n[2])};
}

Mat2 weyl_matrix(const WeylVariant& v, const RealVec& k) {
  const auto s = weyl_symbol(v, k);
  return s.u * pauli::identity() - kI * pauli::dot(s.n_tilde);
}

double weyl_omega(const WeylVariant& v, const RealVec& k) {
  const auto s = weyl_symbol(v, k);
  return std::atan2(s.n_tilde.norm(), s.u);
}

RealVec weyl_group_velocity(const WeylVariant& v, const RealVec& k) {
  check_k(v, k);
  const auto s = raw_symbol(v, seeded(k));
  const double sin_omega =
      std::sqrt(s.n[0].value() * s.n[0].value() + s.n[1].value() * s.n[1].value() +
                s.n[2].value() * s.n[2].value());
  if (sin_omega == 0.0) return RealVec::Zero(k.size());
  // u = cos ω, so ∇ω = −∇u / sin ω.
  return -grad(s.u, k.size()) / sin_omega;
}

double omega_over_sin(double omega) {
  if (std::abs(omega) < 1e-4) return 1.0 + omega * omega / 6.0;
  return omega / std::sin(omega);
}

Vec3 weyl_helicity(const WeylVariant& v, const RealVec& k) {
  const auto s = weyl_symbol(v, k);
  const double omega = std::atan2(s.n_tilde.norm(), s.u);
  return omega_over_sin(omega) * s.n_tilde;
}

DispersionSample dispersion(const WeylVariant& v, const RealVec& k) {
  DispersionSample out;
  out.k = k;
  out.omega_plus = weyl_omega(v, k);
  out.omega_minus = -out.omega_plus;
  out.group_velocity = weyl_group_velocity(v, k);
  out.helicity = weyl_helicity(v, k);
  return out;
}

Mat2 interpolating_hamiltonian(const WeylVariant& v, const RealVec& k) {
  const double omega = weyl_omega(v, k);
  if (kPi - omega < 1e-6) {
    throw BranchPoint("omega is at the logarithm branch point (pi - omega = " +
                      std::to_string(kPi - omega) + ")");
  }
  return pauli::dot(weyl_helicity(v, k));
}

RealMatrix weyl_jacobian_at_origin(const WeylVariant& v) {
  validate(v);
  if (v.theta != 0.0) {
    throw Error("first-order expansion is defined around W = I; theta must be 0");
  }
  const auto s = raw_symbol(v, seeded(RealVec::Zero(v.dimension)));
  RealMatrix j(3, v.dimension);
  for (int r = 0; r < 3; ++r) j.row(r) = grad(s.n[static_cast<std::size_t>(r)], v.dimension).transpose();
  return j;
}

Mat2 small_k_hamiltonian(const WeylVariant& v, const RealVec& k) {
  if (k.size() != v.dimension) throw DimensionMismatch("wave vector dimension does not match the variant");
  const Vec3 n = weyl_jacobian_at_origin(v) * k;
  return pauli::dot(n);
}

}  // namespace qca

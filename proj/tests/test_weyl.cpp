#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "qca/weyl.hpp"

using namespace qca;

namespace {

RealVec rv(std::initializer_list<double> xs) {
  RealVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

std::vector<WeylVariant> all_variants() {
  return {WeylVariant::line(),
          WeylVariant::square(WeylFamily::a),
          WeylVariant::square(WeylFamily::b),
          WeylVariant::square(WeylFamily::a, 0.7),
          WeylVariant::bcc(WeylFamily::a_plus),
          WeylVariant::bcc(WeylFamily::a_minus),
          WeylVariant::bcc(WeylFamily::b_plus),
          WeylVariant::bcc(WeylFamily::b_minus)};
}

RealVec random_k(int d, std::mt19937_64& rng, double half = 2.0) {
  std::uniform_real_distribution<double> u(-half, half);
  RealVec k(d);
  for (int i = 0; i < d; ++i) k(i) = u(rng);
  return k;
}

}  // namespace

TEST_CASE("W_k is in SU(2) and omega is arccos u") {
  std::mt19937_64 rng(11);
  for (const auto& v : all_variants()) {
    for (int i = 0; i < 50; ++i) {
      const RealVec k = random_k(v.dimension, rng);
      const Mat2 w = weyl_matrix(v, k);
      CHECK(unitarity_residual(w) < 1e-14);
      if (v.theta == 0.0) CHECK(std::abs(w.determinant() - 1.0) < 1e-14);
      const auto s = weyl_symbol(v, k);
      CHECK(s.u * s.u + s.n_tilde.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
      if (std::abs(s.u) < 0.99) CHECK(weyl_omega(v, k) == doctest::Approx(std::acos(s.u)).epsilon(1e-13));
    }
  }
}

TEST_CASE("A+ at the zone point along x") {
  const auto v = WeylVariant::bcc(WeylFamily::a_plus);
  const RealVec k = rv({std::sqrt(3.0) * kPi / 2.0, 0.0, 0.0});
  const auto s = weyl_symbol(v, k);
  CHECK(std::abs(s.u) < 1e-15);
  CHECK((s.n_tilde - Vec3(1.0, 0.0, 0.0)).norm() < 1e-15);
  CHECK(max_abs(weyl_matrix(v, k) - Mat2(-kI * pauli::x())) < 1e-15);
  CHECK(weyl_omega(v, k) == doctest::Approx(kPi / 2.0));
}

TEST_CASE("B variants are transposes of A variants") {
  std::mt19937_64 rng(2);
  const std::pair<WeylFamily, WeylFamily> pairs[] = {{WeylFamily::a_plus, WeylFamily::b_plus},
                                                     {WeylFamily::a_minus, WeylFamily::b_minus}};
  for (const auto& [a, b] : pairs) {
    for (int i = 0; i < 20; ++i) {
      const RealVec k = random_k(3, rng);
      const Mat2 wa = weyl_matrix(WeylVariant::bcc(a), k);
      const Mat2 wb = weyl_matrix(WeylVariant::bcc(b), k);
      CHECK(max_abs(wb - Mat2(wa.transpose())) < 1e-15);
    }
  }
}

TEST_CASE("group velocity matches central differences of omega") {
  std::mt19937_64 rng(4);
  const double h = 1e-6;
  for (const auto& v : all_variants()) {
    for (int i = 0; i < 20; ++i) {
      const RealVec k = random_k(v.dimension, rng);
      const double w = weyl_omega(v, k);
      if (w < 0.05 || w > kPi - 0.05) continue;
      const RealVec g = weyl_group_velocity(v, k);
      for (int j = 0; j < v.dimension; ++j) {
        RealVec kp = k, km = k;
        kp(j) += h;
        km(j) -= h;
        const double fd = (weyl_omega(v, kp) - weyl_omega(v, km)) / (2.0 * h);
        CHECK(g(j) == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("speed near the origin") {
  const auto bcc = WeylVariant::bcc(WeylFamily::a_plus);
  CHECK(weyl_group_velocity(bcc, rv({1e-4, 0.0, 0.0})).norm() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-7));
  CHECK(weyl_group_velocity(bcc, RealVec::Zero(3)).isZero());
  CHECK(weyl_group_velocity(WeylVariant::line(), rv({0.2})).norm() == doctest::Approx(1.0));
}

TEST_CASE("interpolating Hamiltonian exponentiates to W") {
  std::mt19937_64 rng(8);
  for (const auto& v : all_variants()) {
    for (int i = 0; i < 20; ++i) {
      const RealVec k = random_k(v.dimension, rng);
      if (weyl_omega(v, k) > kPi - 1e-3) continue;
      const Mat2 h = interpolating_hamiltonian(v, k);
      CHECK(max_abs(h - Mat2(h.adjoint())) < 1e-15);
      const Mat2 e = (Mat2(-kI * h)).exp();
      CHECK(max_abs(e - weyl_matrix(v, k)) < 1e-12);
      CHECK(weyl_helicity(v, k).norm() == doctest::Approx(weyl_omega(v, k)));
    }
  }
  const Mat2 h1 = interpolating_hamiltonian(WeylVariant::line(), rv({0.3}));
  CHECK(max_abs(h1 - Mat2(0.3 * pauli::z())) < 1e-15);
  CHECK_THROWS_AS(interpolating_hamiltonian(WeylVariant::line(), rv({kPi})), BranchPoint);
}

TEST_CASE("small-k Hamiltonian") {
  const auto v = WeylVariant::bcc(WeylFamily::a_plus);
  Eigen::SelfAdjointEigenSolver<Mat2> es(small_k_hamiltonian(v, rv({0.1, 0.0, 0.0})));
  CHECK(es.eigenvalues()(0) == doctest::Approx(-0.1 / std::sqrt(3.0)));
  CHECK(es.eigenvalues()(1) == doctest::Approx(0.1 / std::sqrt(3.0)));

  for (const auto& w : all_variants()) {
    if (w.theta != 0.0) {
      CHECK_THROWS_AS(weyl_jacobian_at_origin(w), Error);
      continue;
    }
    // |J k| = |k| / √d: the cone is isotropic.
    const RealMatrix j = weyl_jacobian_at_origin(w);
    CHECK(max_abs(RealMatrix(j.transpose() * j) - RealMatrix::Identity(w.dimension, w.dimension) / w.dimension) <
          1e-14);
    // Agreement with the full Hamiltonian to second order.
    const RealVec k = RealVec::Constant(w.dimension, 1e-3);
    CHECK(max_abs(small_k_hamiltonian(w, k) - interpolating_hamiltonian(w, k)) < 1e-5);
  }
  CHECK_THROWS_AS(small_k_hamiltonian(v, rv({0.1, 0.0})), DimensionMismatch);
}

TEST_CASE("W is periodic across the zone") {
  std::mt19937_64 rng(13);
  for (const auto& v : all_variants()) {
    const auto p = CayleyPresentation::build(v.lattice());
    const RealMatrix g = p.reciprocal_basis();
    for (int i = 0; i < 20; ++i) {
      const RealVec k = random_k(v.dimension, rng, 6.0);
      for (int c = 0; c < g.cols(); ++c) {
        CHECK(max_abs(weyl_matrix(v, k + g.col(c)) - weyl_matrix(v, k)) < 1e-12);
      }
      // Opposite faces meet continuously after reduction.
      CHECK(std::abs(weyl_omega(v, reduce_to_zone(p, k)) - weyl_omega(v, k)) < 1e-12);
    }
  }
}

TEST_CASE("dispersion sample") {
  const auto v = WeylVariant::square(WeylFamily::a);
  const auto s = dispersion(v, rv({0.4, -0.2}));
  CHECK(s.omega_minus == -s.omega_plus);
  CHECK(s.omega_plus == weyl_omega(v, rv({0.4, -0.2})));
  CHECK(s.group_velocity.size() == 2);
  CHECK_THROWS_AS(validate(WeylVariant{2, WeylFamily::a_plus, 0.0}), Error);
}

#include "qca/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <Eigen/Eigenvalues>

namespace qca {

CMatrix TransitionRule::at(Label h) const {
  auto it = entries.find(h);
  if (it == entries.end()) return CMatrix::Zero(internal_dim, internal_dim);
  return it->second;
}

// ---------------------------------------------------------------------------
// Isotropy

std::vector<int> permutation_from_rotation(const CayleyPresentation& p, const RealMatrix& rotation) {
  const auto labels = p.labels();
  std::vector<int> perm(labels.size(), -1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const RealVec image = rotation * p.displacement(labels[i]);
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if ((p.displacement(labels[j]) - image).norm() < 1e-9) {
        perm[i] = static_cast<int>(j);
        break;
      }
    }
    if (perm[i] < 0) throw Error("rotation does not map the generating set onto itself");
  }
  return perm;
}

IsotropyGroup make_isotropy(const CayleyPresentation& p,
                            const std::vector<std::pair<RealMatrix, CMatrix>>& rotations) {
  IsotropyGroup g;
  for (const auto& [r, u] : rotations) g.elements.push_back({permutation_from_rotation(p, r), u});
  return g;
}

IsotropyReport validate_isotropy(const CayleyPresentation& p, const IsotropyGroup& g) {
  IsotropyReport rep;
  const std::size_t n_labels = p.labels().size();
  auto index_of = [&](const std::vector<int>& perm) -> int {
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
      if (g.elements[i].permutation == perm) return static_cast<int>(i);
    }
    return -1;
  };

  rep.closed = true;
  for (const auto& a : g.elements) {
    if (a.permutation.size() != n_labels) {
      rep.closed = false;
      continue;
    }
    rep.unitarity = std::max(rep.unitarity, unitarity_residual(a.unitary));
    for (const auto& b : g.elements) {
      if (b.permutation.size() != n_labels) continue;
      std::vector<int> ab(n_labels);
      for (std::size_t i = 0; i < n_labels; ++i) {
        ab[i] = a.permutation[static_cast<std::size_t>(b.permutation[i])];
      }
      const int c = index_of(ab);
      if (c < 0) {
        rep.closed = false;
        continue;
      }
      const CMatrix prod = a.unitary * b.unitary;
      const CMatrix& uc = g.elements[static_cast<std::size_t>(c)].unitary;
      const cplx lambda = (uc.adjoint() * prod).trace() / static_cast<double>(uc.rows());
      rep.homomorphism = std::max(rep.homomorphism, max_abs(prod - lambda * uc));
    }
  }

  // Orbit of the first generator must cover S+.
  std::set<int> orbit{1};
  for (const auto& a : g.elements) {
    if (a.permutation.size() == n_labels) orbit.insert(a.permutation[1]);
  }
  rep.transitive = true;
  for (std::size_t i = 1; i < n_labels; i += 2) {
    if (!orbit.contains(static_cast<int>(i))) rep.transitive = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Wave-vector operator

CMatrix assemble_k_operator(const CayleyPresentation& p, const TransitionRule& rule, const RealVec& k) {
  if (k.size() != p.dimension()) throw DimensionMismatch("wave vector has wrong dimension");
  const RealVec kr = reduce_to_zone(p, k);
  CMatrix out = CMatrix::Zero(rule.internal_dim, rule.internal_dim);
  for (const auto& [h, a] : rule.entries) {
    out += std::exp(-kI * kr.dot(p.displacement(h))) * a;
  }
  return out;
}

CMatrix assemble_k_operator(const AutomatonDescriptor& a, const RealVec& k) {
  return assemble_k_operator(a.presentation, a.rule, k);
}

double UnitarityReport::max_residual() const {
  double m = std::max(completeness_left, completeness_right);
  for (const auto& o : off_diagonal) m = std::max({m, o.left, o.right});
  return m;
}

UnitarityReport check_unitarity_conditions(const TransitionRule& rule, const CayleyPresentation& p) {
  const int s = rule.internal_dim;
  const CMatrix id = CMatrix::Identity(s, s);
  UnitarityReport rep;

  std::map<std::vector<long long>, std::pair<CMatrix, CMatrix>> sums;
  CMatrix left0 = CMatrix::Zero(s, s), right0 = CMatrix::Zero(s, s);
  for (const auto& h : p.labels()) {
    for (const auto& h2 : p.labels()) {
      const IntVec diff = p.coords(h2) - p.coords(h);
      const CMatrix a = rule.at(h), b = rule.at(h2);
      const CMatrix l = a.adjoint() * b;
      const CMatrix r = b * a.adjoint();
      if (diff.isZero()) {
        left0 += l;
        right0 += r;
        continue;
      }
      const std::vector<long long> key(diff.data(), diff.data() + diff.size());
      auto [it, fresh] = sums.try_emplace(key, CMatrix::Zero(s, s), CMatrix::Zero(s, s));
      it->second.first += l;
      it->second.second += r;
    }
  }
  rep.completeness_left = max_abs(left0 - id);
  rep.completeness_right = max_abs(right0 - id);
  for (const auto& [key, lr] : sums) {
    IntVec d(static_cast<Eigen::Index>(key.size()));
    for (std::size_t i = 0; i < key.size(); ++i) d(static_cast<Eigen::Index>(i)) = key[i];
    rep.off_diagonal.push_back({d, max_abs(lr.first), max_abs(lr.second)});
  }
  return rep;
}

double check_covariance(const AutomatonDescriptor& a) {
  if (!a.isotropy) throw Error("descriptor has no isotropy group");
  const auto labels = a.presentation.labels();
  double worst = 0.0;
  for (const auto& el : a.isotropy->elements) {
    if (el.permutation.size() != labels.size()) throw Error("isotropy permutation has wrong size");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const CMatrix lhs = el.unitary * a.rule.at(labels[i]) * el.unitary.adjoint();
      const CMatrix rhs = a.rule.at(labels[static_cast<std::size_t>(el.permutation[i])]);
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Extraction

ExtractedRule extract_transition_matrices(const std::function<CMatrix(const RealVec&)>& f,
                                          const CayleyPresentation& p, const std::vector<Label>& support,
                                          double tol) {
  const int d = p.dimension();
  std::vector<std::vector<long long>> support_coords;
  IntVec degree = IntVec::Zero(d);
  for (const auto& l : support) {
    const IntVec c = p.coords(l);
    degree = degree.cwiseMax(c.cwiseAbs());
    std::vector<long long> key(c.data(), c.data() + c.size());
    if (std::find(support_coords.begin(), support_coords.end(), key) != support_coords.end()) {
      throw Error("support lists two labels with the same group element");
    }
    support_coords.push_back(std::move(key));
  }

  // Grid of 2·deg+1 samples per coordinate resolves every exponent without aliasing.
  std::vector<long long> n(static_cast<std::size_t>(d));
  long long total = 1;
  for (int i = 0; i < d; ++i) {
    n[static_cast<std::size_t>(i)] = 2 * degree(i) + 1;
    total *= n[static_cast<std::size_t>(i)];
  }

  std::vector<RealVec> thetas;
  std::vector<CMatrix> samples;
  for (long long flat = 0; flat < total; ++flat) {
    RealVec theta(d);
    long long rem = flat;
    for (int i = d - 1; i >= 0; --i) {
      const long long ni = n[static_cast<std::size_t>(i)];
      theta(i) = 2.0 * kPi * static_cast<double>(rem % ni) / static_cast<double>(ni);
      rem /= ni;
    }
    thetas.push_back(theta);
    samples.push_back(f(p.wave_vector(theta)));
  }
  const Eigen::Index s = samples.front().rows();

  auto coefficient = [&](const IntVec& c) {
    CMatrix acc = CMatrix::Zero(s, s);
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      acc += std::exp(kI * thetas[j].dot(c.cast<double>())) * samples[j];
    }
    return CMatrix(acc / static_cast<double>(total));
  };

  ExtractedRule out;
  out.rule.internal_dim = static_cast<int>(s);
  for (const auto& l : support) {
    CMatrix a = coefficient(p.coords(l));
    if (max_abs(a) > 0.0) out.rule.entries.emplace(l, std::move(a));
  }

  // Verify the reconstruction at independent random wave vectors.
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> uni(-kPi, kPi);
  double residual = 0.0;
  for (int probe = 0; probe < 16; ++probe) {
    RealVec theta(d);
    for (int i = 0; i < d; ++i) theta(i) = uni(rng);
    const RealVec k = p.wave_vector(theta);
    residual = std::max(residual, max_abs(f(k) - assemble_k_operator(p, out.rule, k)));
  }
  out.residual = residual;
  if (residual > tol) {
    throw SupportMismatch("reconstruction residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectrum

Spectrum unitary_spectrum(const CMatrix& u, double tol) {
  const double res = unitarity_residual(u);
  if (res > tol) throw NonUnitary("matrix is not unitary (residual " + std::to_string(res) + ")");
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& t = schur.matrixT();
  const CMatrix& q = schur.matrixU();
  const Eigen::Index s = u.rows();

  std::vector<double> phase(static_cast<std::size_t>(s));
  for (Eigen::Index i = 0; i < s; ++i) {
    double ph = std::arg(t(i, i));
    if (ph <= -kPi) ph += 2.0 * kPi;
    phase[static_cast<std::size_t>(i)] = ph;
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(s));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return phase[static_cast<std::size_t>(a)] < phase[static_cast<std::size_t>(b)];
  });

  Spectrum out;
  out.phases.resize(s);
  out.vectors.resize(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    out.phases(i) = phase[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    out.vectors.col(i) = q.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

Spectrum spectrum(const AutomatonDescriptor& a, const RealVec& k) {
  return unitary_spectrum(assemble_k_operator(a, k));
}

CMatrix unitary_power(const CMatrix& u, long long n) {
  const Spectrum sp = unitary_spectrum(u);
  CVector lambda(sp.phases.size());
  for (Eigen::Index i = 0; i < sp.phases.size(); ++i) {
    lambda(i) = std::polar(1.0, static_cast<double>(n) * sp.phases(i));
  }
  return sp.vectors * lambda.asDiagonal() * sp.vectors.adjoint();
}

}  // namespace qca

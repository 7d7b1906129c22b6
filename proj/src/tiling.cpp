#include "qca/tiling.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace qca {

namespace {

IntVec sign_normalized(IntVec z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z(i) != 0) {
      if (z(i) < 0) z = -z;
      break;
    }
  }
  return z;
}

bool is_unit(const IntVec& z) { return z.cwiseAbs().sum() == 1; }

}  // namespace

CayleyPresentation coarse_presentation(const TilingMap& t, const std::vector<IntVec>& extra) {
  const auto& parent = t.parent();
  const int d = parent.dimension();
  const RealMatrix cell = parent.basis_matrix() * t.subgroup_basis().cast<double>();

  std::vector<Generator> gens;
  std::vector<int> free_basis;
  for (int j = 0; j < d; ++j) {
    const std::string name = "H" + std::to_string(j + 1);
    gens.push_back({name, cell.col(j), name + "^-1"});
    free_basis.push_back(j);
  }

  std::vector<std::vector<long long>> others;
  for (const auto& z : extra) {
    if (z.size() != d) throw DimensionMismatch("coarse displacement has wrong dimension");
    if (z.isZero() || is_unit(z)) continue;
    const IntVec n = sign_normalized(z);
    std::vector<long long> key(n.data(), n.data() + n.size());
    if (std::find(others.begin(), others.end(), key) == others.end()) others.push_back(key);
  }
  std::sort(others.begin(), others.end());

  std::vector<std::vector<long long>> relators;
  for (std::size_t g = 0; g < others.size(); ++g) {
    const std::string name = "H" + std::to_string(d + 1 + static_cast<int>(g));
    RealVec disp = RealVec::Zero(d);
    std::vector<long long> rel(static_cast<std::size_t>(d) + others.size(), 0);
    for (int j = 0; j < d; ++j) {
      disp += static_cast<double>(others[g][static_cast<std::size_t>(j)]) * cell.col(j);
      rel[static_cast<std::size_t>(j)] = -others[g][static_cast<std::size_t>(j)];
    }
    rel[static_cast<std::size_t>(d) + g] = 1;
    gens.push_back({name, disp, name + "^-1"});
    relators.push_back(std::move(rel));
  }
  return CayleyPresentation(d, std::move(gens), std::move(relators), std::move(free_basis), ZoneKind::wigner_seitz);
}

AutomatonDescriptor tile_descriptor(const AutomatonDescriptor& a, const TilingMap& t) {
  const auto& p = a.presentation;
  const int s = a.internal_dim();
  const int r = t.index();
  const int big = s * r;

  // A′_{−w}[i, j] += A_h where c_i − c_h = c_j + M w.
  std::map<std::vector<long long>, CMatrix> blocks;
  for (const auto& [h, m] : a.rule.entries) {
    for (int i = 0; i < r; ++i) {
      const auto [j, w] = t.decompose(t.coset_reps()[static_cast<std::size_t>(i)] - p.coords(h));
      const IntVec z = -w;
      std::vector<long long> key(z.data(), z.data() + z.size());
      auto it = blocks.try_emplace(key, CMatrix::Zero(big, big)).first;
      it->second.block(i * s, j * s, s, s) += m;
    }
  }

  std::vector<IntVec> disp;
  for (const auto& [key, m] : blocks) {
    IntVec z(static_cast<Eigen::Index>(key.size()));
    for (std::size_t i = 0; i < key.size(); ++i) z(static_cast<Eigen::Index>(i)) = key[i];
    disp.push_back(z);
  }
  CayleyPresentation coarse = coarse_presentation(t, disp);

  TransitionRule rule;
  rule.internal_dim = big;
  for (std::size_t n = 0; n < disp.size(); ++n) {
    const auto label = coarse.label_for_coords(disp[n]);
    if (!label) throw Error("coarse displacement missing from the coarse presentation");
    rule.entries.emplace(*label, blocks.at(std::vector<long long>(disp[n].data(), disp[n].data() + disp[n].size())));
  }
  return {std::move(coarse), std::move(rule), std::nullopt};
}

std::vector<int> coarse_sizes(const LatticeSpec& fine, const TilingMap& t) {
  const IntMatrix& m = t.subgroup_basis();
  const int d = fine.dimension();
  std::vector<int> out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i != j && m(i, j) != 0) throw Error("apply_tiling needs a diagonal subgroup basis");
    }
    const long long mi = std::abs(m(i, i));
    const int li = fine.sizes[static_cast<std::size_t>(i)];
    if (li % mi != 0) {
      throw Error("lattice size " + std::to_string(li) + " is not divisible by " + std::to_string(mi));
    }
    out[static_cast<std::size_t>(i)] = static_cast<int>(li / mi);
  }
  return out;
}

FieldState apply_tiling(const FieldState& state, const TilingMap& t, const CayleyPresentation& coarse) {
  const auto& fine = state.lattice;
  if (coarse.dimension() != fine.dimension()) throw DimensionMismatch("coarse presentation has wrong dimension");
  const LatticeSpec lat(coarse, coarse_sizes(fine, t));
  const int s = state.internal_dim;
  const int r = t.index();
  FieldState out = FieldState::zeros(lat, s * r);
  out.time = state.time;
  for (long long site = 0; site < lat.sites(); ++site) {
    const IntVec y = lat.site_coords(site);
    const IntVec base = t.subgroup_basis() * y;
    for (int i = 0; i < r; ++i) {
      const long long src = fine.site_index(t.coset_reps()[static_cast<std::size_t>(i)] + base);
      out.amplitudes.segment(site * s * r + i * s, s) = state.amplitudes.segment(src * s, s);
    }
  }
  return out;
}

double commuting_square_residual(const AutomatonDescriptor& a, const AutomatonDescriptor& tiled, const TilingMap& t,
                                 const FieldState& state) {
  const FieldState fine_then_tile = apply_tiling(step_direct(state, a), t, tiled.presentation);
  const FieldState tile_then_coarse = step_direct(apply_tiling(state, t, tiled.presentation), tiled);
  return (fine_then_tile.amplitudes - tile_then_coarse.amplitudes).cwiseAbs().maxCoeff();
}

std::vector<RealVec> folded_wave_vectors(const TilingMap& t, const RealVec& coarse_k) {
  const auto& p = t.parent();
  const int d = p.dimension();
  const IntMatrix mt = t.subgroup_basis().transpose();
  std::vector<IntVec> cols;
  for (int j = 0; j < d; ++j) cols.push_back(mt.col(j));
  const TilingMap dual = make_tiling(p, cols);
  const RealMatrix cell = p.basis_matrix() * t.subgroup_basis().cast<double>();
  const RealMatrix g = 2.0 * kPi * cell.transpose().inverse();
  std::vector<RealVec> out;
  for (const auto& n : dual.coset_reps()) out.push_back(coarse_k + g * n.cast<double>());
  return out;
}

double folded_band_residual(const AutomatonDescriptor& a, const AutomatonDescriptor& tiled, const TilingMap& t,
                            const RealVec& coarse_k) {
  std::vector<cplx> fine;
  for (const auto& k : folded_wave_vectors(t, coarse_k)) {
    const auto sp = spectrum(a, k);
    for (Eigen::Index i = 0; i < sp.phases.size(); ++i) fine.push_back(std::polar(1.0, sp.phases(i)));
  }
  const auto coarse = spectrum(tiled, coarse_k);
  if (static_cast<std::size_t>(coarse.phases.size()) != fine.size()) {
    throw DimensionMismatch("folded spectrum has the wrong size");
  }
  std::vector<bool> used(fine.size(), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < coarse.phases.size(); ++i) {
    const cplx z = std::polar(1.0, coarse.phases(i));
    std::size_t best = fine.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < fine.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(z - fine[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

}  // namespace qca

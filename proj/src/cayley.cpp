#include "qca/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

namespace qca {

namespace {

struct CoordHash {
  std::size_t operator()(const std::vector<long long>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (long long x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

std::vector<long long> to_std(const IntVec& v) { return {v.data(), v.data() + v.size()}; }

bool lex_less(const RealVec& a, const RealVec& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

int first_nonzero_sign(const RealVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12 * v.norm()) return v(i) > 0 ? 1 : -1;
  }
  return 0;
}

// Visits every integer vector in [-range, range]^d.
template <typename F>
void for_each_int_vector(int d, int range, F&& f) {
  IntVec n = IntVec::Constant(d, -range);
  while (true) {
    f(n);
    int i = d - 1;
    while (i >= 0 && n(i) == range) {
      n(i) = -range;
      --i;
    }
    if (i < 0) return;
    ++n(i);
  }
}

}  // namespace

std::string to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::line: return "line";
    case LatticeKind::square_2d: return "square_2d";
    case LatticeKind::bcc_3d: return "bcc_3d";
  }
  return "?";
}

std::string to_string(ZoneKind kind) {
  switch (kind) {
    case ZoneKind::interval_1d: return "interval_1d";
    case ZoneKind::square_2d: return "square_2d";
    case ZoneKind::rhombic_dodecahedron_3d: return "rhombic_dodecahedron_3d";
    case ZoneKind::wigner_seitz: return "wigner_seitz";
  }
  return "?";
}

LatticeKind lattice_kind_from_string(std::string_view name) {
  if (name == "line") return LatticeKind::line;
  if (name == "square_2d") return LatticeKind::square_2d;
  if (name == "bcc_3d") return LatticeKind::bcc_3d;
  throw Error("unknown lattice kind '" + std::string(name) + "'");
}

ZoneKind zone_kind_from_string(std::string_view name) {
  if (name == "interval_1d") return ZoneKind::interval_1d;
  if (name == "square_2d") return ZoneKind::square_2d;
  if (name == "rhombic_dodecahedron_3d") return ZoneKind::rhombic_dodecahedron_3d;
  if (name == "wigner_seitz") return ZoneKind::wigner_seitz;
  throw Error("unknown zone kind '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// BrillouinZone

BrillouinZone::BrillouinZone(ZoneKind kind, const RealMatrix& reciprocal_basis)
    : kind_(kind), reciprocal_(reciprocal_basis) {
  const int d = static_cast<int>(reciprocal_.cols());
  // Candidates with coefficients in [-2,2] are tested against competitors in
  // [-4,4]; b is Voronoi-relevant iff 0 and b are the only lattice points
  // nearest to b/2.
  std::vector<RealVec> competitors;
  for_each_int_vector(d, 4, [&](const IntVec& n) {
    if (!n.isZero()) competitors.push_back(reciprocal_ * n.cast<double>());
  });
  for_each_int_vector(d, 2, [&](const IntVec& n) {
    if (n.isZero()) return;
    const RealVec b = reciprocal_ * n.cast<double>();
    const RealVec mid = 0.5 * b;
    const double r2 = mid.squaredNorm();
    for (const auto& w : competitors) {
      if ((w - b).norm() < 1e-12 * b.norm()) continue;
      if ((mid - w).squaredNorm() <= r2 * (1.0 + 1e-9)) return;
    }
    bounds_.push_back({b, 0.5 * b.squaredNorm()});
  });
  std::sort(bounds_.begin(), bounds_.end(),
            [](const HalfSpace& a, const HalfSpace& b) { return lex_less(a.normal, b.normal); });
}

bool BrillouinZone::contains(const RealVec& k, double tol) const {
  return std::all_of(bounds_.begin(), bounds_.end(), [&](const HalfSpace& h) {
    return h.normal.dot(k) <= h.offset * (1.0 + tol);
  });
}

double BrillouinZone::volume() const { return std::abs(reciprocal_.determinant()); }

double BrillouinZone::inradius() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& h : bounds_) r = std::min(r, h.offset / h.normal.norm());
  return r;
}

// ---------------------------------------------------------------------------
// CayleyPresentation

namespace {

RealMatrix make_basis(int d, const std::vector<Generator>& gens, const std::vector<int>& free_basis) {
  if (static_cast<int>(free_basis.size()) != d) {
    throw Error("free basis must contain exactly d generators");
  }
  RealMatrix a(d, d);
  for (int i = 0; i < d; ++i) {
    const int g = free_basis[static_cast<std::size_t>(i)];
    if (g < 0 || g >= static_cast<int>(gens.size())) throw Error("free basis index out of range");
    a.col(i) = gens[static_cast<std::size_t>(g)].displacement;
  }
  if (std::abs(a.determinant()) < 1e-12) throw Error("free basis displacements are linearly dependent");
  return a;
}

RealMatrix reciprocal_of(const RealMatrix& basis) {
  return 2.0 * kPi * basis.transpose().inverse();
}

}  // namespace

CayleyPresentation::CayleyPresentation(int dimension, std::vector<Generator> generators,
                                       std::vector<std::vector<long long>> relators,
                                       std::vector<int> free_basis, ZoneKind zone_kind)
    : dimension_(dimension),
      generators_(std::move(generators)),
      relators_(std::move(relators)),
      free_basis_(std::move(free_basis)),
      basis_(make_basis(dimension_, generators_, free_basis_)),
      zone_(zone_kind, reciprocal_of(basis_)) {
  if (dimension_ < 1 || dimension_ > 3) throw Error("dimension must be 1, 2 or 3");
  std::set<std::string> names{"e"};
  for (const auto& g : generators_) {
    if (g.displacement.size() != dimension_) throw Error("generator '" + g.label + "' has wrong dimension");
    if (!names.insert(g.label).second || !names.insert(g.inverse_label).second) {
      throw Error("duplicate generator label '" + g.label + "'");
    }
  }
  const RealMatrix inv = basis_.inverse();
  for (const auto& g : generators_) {
    const RealVec c = inv * g.displacement;
    IntVec rounded(dimension_);
    for (int i = 0; i < dimension_; ++i) rounded(i) = std::llround(c(i));
    if ((c - rounded.cast<double>()).cwiseAbs().maxCoeff() > 1e-9) {
      throw Error("generator '" + g.label + "' is not an integer combination of the free basis");
    }
    coords_.push_back(rounded);
  }
  for (const auto& r : relators_) {
    if (r.size() != generators_.size()) throw Error("relator length must equal |S+|");
    RealVec sum = RealVec::Zero(dimension_);
    for (std::size_t j = 0; j < r.size(); ++j) sum += static_cast<double>(r[j]) * generators_[j].displacement;
    if (sum.norm() > 1e-9) throw Error("relator does not evaluate to zero");
  }
}

CayleyPresentation CayleyPresentation::build(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::line: {
      return CayleyPresentation(1, {{"h", RealVec::Ones(1), "h^-1"}}, {}, {0}, ZoneKind::interval_1d);
    }
    case LatticeKind::square_2d: {
      const double s = 1.0 / std::sqrt(2.0);
      RealVec h1(2), h2(2);
      h1 << s, s;
      h2 << s, -s;
      return CayleyPresentation(2, {{"h1", h1, "h1^-1"}, {"h2", h2, "h2^-1"}}, {}, {0, 1},
                                ZoneKind::square_2d);
    }
    case LatticeKind::bcc_3d: {
      const double s = 1.0 / std::sqrt(3.0);
      RealVec h1(3), h2(3), h3(3), h4(3);
      h1 << s, s, s;
      h2 << s, -s, -s;
      h3 << -s, s, -s;
      h4 << -s, -s, s;
      return CayleyPresentation(
          3, {{"h1", h1, "h1^-1"}, {"h2", h2, "h2^-1"}, {"h3", h3, "h3^-1"}, {"h4", h4, "h4^-1"}},
          {{1, 1, 1, 1}}, {0, 1, 2}, ZoneKind::rhombic_dodecahedron_3d);
    }
  }
  throw Error("unknown lattice kind");
}

std::vector<Label> CayleyPresentation::labels() const {
  std::vector<Label> out{Label::identity()};
  for (int g = 0; g < static_cast<int>(generators_.size()); ++g) {
    out.push_back(Label::plus(g));
    out.push_back(Label::minus(g));
  }
  return out;
}

std::string CayleyPresentation::name(Label l) const {
  if (l.is_identity()) return "e";
  const auto& g = generators_.at(static_cast<std::size_t>(l.generator));
  return l.sign > 0 ? g.label : g.inverse_label;
}

std::optional<Label> CayleyPresentation::find(std::string_view name) const {
  if (name == "e") return Label::identity();
  for (int g = 0; g < static_cast<int>(generators_.size()); ++g) {
    if (generators_[static_cast<std::size_t>(g)].label == name) return Label::plus(g);
    if (generators_[static_cast<std::size_t>(g)].inverse_label == name) return Label::minus(g);
  }
  return std::nullopt;
}

Label CayleyPresentation::parse(std::string_view name) const {
  if (auto l = find(name)) return *l;
  throw Error("label '" + std::string(name) + "' is not in the presentation");
}

IntVec CayleyPresentation::coords(Label l) const {
  if (l.is_identity()) return IntVec::Zero(dimension_);
  return static_cast<long long>(l.sign) * coords_.at(static_cast<std::size_t>(l.generator));
}

RealVec CayleyPresentation::displacement(Label l) const {
  if (l.is_identity()) return RealVec::Zero(dimension_);
  return static_cast<double>(l.sign) * generators_.at(static_cast<std::size_t>(l.generator)).displacement;
}

std::optional<Label> CayleyPresentation::label_for_coords(const IntVec& c) const {
  for (const auto& l : labels()) {
    if (coords(l) == c) return l;
  }
  return std::nullopt;
}

RealVec CayleyPresentation::wave_vector(const RealVec& phases) const {
  return basis_.transpose().inverse() * phases;
}

// ---------------------------------------------------------------------------

long long word_metric(const CayleyPresentation& p, const IntVec& a, const IntVec& b, long long radius) {
  if (a.size() != p.dimension() || b.size() != p.dimension()) {
    throw DimensionMismatch("coordinates must have the presentation's dimension");
  }
  const std::vector<long long> target = to_std(b - a);
  const std::vector<long long> origin(static_cast<std::size_t>(p.dimension()), 0);
  if (target == origin) return 0;

  std::vector<std::vector<long long>> steps;
  for (const auto& l : p.labels()) {
    if (!l.is_identity()) steps.push_back(to_std(p.coords(l)));
  }
  std::unordered_set<std::vector<long long>, CoordHash> seen{origin};
  std::vector<std::vector<long long>> frontier{origin};
  for (long long depth = 1; depth <= radius; ++depth) {
    std::vector<std::vector<long long>> next;
    for (const auto& x : frontier) {
      for (const auto& s : steps) {
        std::vector<long long> y(x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += s[i];
        if (y == target) return depth;
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  throw RadiusExceeded("word distance exceeds search radius " + std::to_string(radius));
}

RealVec reduce_to_zone(const CayleyPresentation& p, const RealVec& k) {
  const auto& zone = p.zone();
  const RealMatrix& b = p.reciprocal_basis();
  RealVec frac = p.phases(k) / (2.0 * kPi);
  RealVec out = k - b * frac.array().round().matrix();
  // Each move strictly decreases |k| or, on a tie, strictly increases k
  // lexicographically, so the loop terminates.
  for (int iter = 0; iter < 1000; ++iter) {
    bool moved = false;
    for (const auto& h : zone.bounds()) {
      const double s = h.normal.dot(out);
      const double eps = 1e-12 * h.offset;
      if (s > h.offset + eps || (s >= h.offset - eps && first_nonzero_sign(h.normal) < 0)) {
        out -= h.normal;
        moved = true;
      }
    }
    if (!moved) return out;
  }
  throw Error("reduce_to_zone failed to converge");
}

// ---------------------------------------------------------------------------
// Tiling

long long int_det(const IntMatrix& m) {
  switch (m.rows()) {
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: throw Error("integer determinant supports d <= 3");
  }
}

IntMatrix int_adjugate(const IntMatrix& m) {
  const auto d = m.rows();
  IntMatrix adj(d, d);
  if (d == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      IntMatrix minor(d - 1, d - 1);
      for (Eigen::Index r = 0, mr = 0; r < d; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, mc = 0; c < d; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      const long long cof = ((i + j) % 2 == 0 ? 1 : -1) * int_det(minor);
      adj(j, i) = cof;
    }
  }
  return adj;
}

TilingMap::TilingMap(CayleyPresentation parent, IntMatrix subgroup_basis)
    : parent_(std::move(parent)), basis_(std::move(subgroup_basis)) {
  const int d = parent_.dimension();
  if (basis_.rows() != d || basis_.cols() != d) throw DimensionMismatch("subgroup basis must be d x d");
  det_ = int_det(basis_);
  if (det_ == 0) throw Error("subgroup basis is singular");
  adjugate_ = int_adjugate(basis_);

  const long long r = std::abs(det_);
  // Lexicographic sweep of [0, r)^d; first coordinate most significant.
  IntVec x = IntVec::Zero(d);
  while (static_cast<long long>(reps_.size()) < r) {
    const bool fresh = std::none_of(reps_.begin(), reps_.end(),
                                    [&](const IntVec& c) { return in_sublattice(x - c); });
    if (fresh) reps_.push_back(x);
    int i = d - 1;
    while (i >= 0 && x(i) == r - 1) {
      x(i) = 0;
      --i;
    }
    if (i < 0) break;
    ++x(i);
  }
}

bool TilingMap::in_sublattice(const IntVec& x) const {
  const IntVec y = adjugate_ * x;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) % det_ != 0) return false;
  }
  return true;
}

std::pair<int, IntVec> TilingMap::decompose(const IntVec& x) const {
  for (int j = 0; j < index(); ++j) {
    const IntVec diff = x - reps_[static_cast<std::size_t>(j)];
    if (in_sublattice(diff)) return {j, (adjugate_ * diff) / det_};
  }
  throw Error("coset decomposition failed");
}

TilingMap make_tiling(const CayleyPresentation& p, const std::vector<IntVec>& subgroup_basis) {
  const int d = p.dimension();
  if (static_cast<int>(subgroup_basis.size()) != d) throw DimensionMismatch("need d subgroup basis vectors");
  IntMatrix m(d, d);
  for (int j = 0; j < d; ++j) {
    if (subgroup_basis[static_cast<std::size_t>(j)].size() != d) {
      throw DimensionMismatch("subgroup basis vector has wrong dimension");
    }
    m.col(j) = subgroup_basis[static_cast<std::size_t>(j)];
  }
  return TilingMap(p, m);
}

}  // namespace qca

#include "qca/builtin.hpp"

namespace qca {

namespace {

CMatrix direct_sum(const CMatrix& u) {
  CMatrix out = CMatrix::Zero(2 * u.rows(), 2 * u.cols());
  out.topLeftCorner(u.rows(), u.cols()) = u;
  out.bottomRightCorner(u.rows(), u.cols()) = u;
  return out;
}

std::vector<Label> nontrivial_labels(const CayleyPresentation& p) {
  std::vector<Label> out;
  for (const auto& l : p.labels()) {
    if (!l.is_identity()) out.push_back(l);
  }
  return out;
}

}  // namespace

IsotropyGroup weyl_isotropy(const WeylVariant& v, const CayleyPresentation& p, bool dirac) {
  std::vector<std::pair<RealMatrix, CMatrix>> elements;
  const int d = v.dimension;
  elements.emplace_back(RealMatrix::Identity(d, d), CMatrix(Mat2::Identity()));
  if (d == 3) {
    const auto s = pauli::sigma();
    for (int axis = 0; axis < 3; ++axis) {
      RealMatrix r = -RealMatrix::Identity(3, 3);
      r(axis, axis) = 1.0;
      elements.emplace_back(r, CMatrix(kI * s[static_cast<std::size_t>(axis)]));
    }
  } else if (d == 2) {
    RealMatrix r = RealMatrix::Identity(2, 2);
    r(1, 1) = -1.0;
    elements.emplace_back(r, CMatrix(-kI * pauli::x()));
  }
  if (dirac) {
    for (auto& [r, u] : elements) u = direct_sum(u);
  }
  return make_isotropy(p, elements);
}

AutomatonDescriptor weyl_descriptor(const WeylVariant& v) {
  validate(v);
  auto p = CayleyPresentation::build(v.lattice());
  auto f = [&](const RealVec& k) { return CMatrix(weyl_matrix(v, k)); };
  auto rule = extract_transition_matrices(f, p, nontrivial_labels(p)).rule;
  auto iso = weyl_isotropy(v, p);
  return {std::move(p), std::move(rule), std::move(iso)};
}

AutomatonDescriptor dirac_descriptor(const DiracDescriptor& dd) {
  validate(dd);
  auto p = CayleyPresentation::build(dd.weyl.lattice());
  auto f = [&](const RealVec& k) { return CMatrix(dirac_matrix(dd, k)); };
  auto rule = extract_transition_matrices(f, p, p.labels()).rule;
  auto iso = weyl_isotropy(dd.weyl, p, true);
  return {std::move(p), std::move(rule), std::move(iso)};
}

std::optional<WeylVariant> weyl_variant_from_name(std::string_view name, double theta) {
  if (name == "weyl-1d") return WeylVariant::line();
  if (name == "weyl-2d") return WeylVariant::square(WeylFamily::a, theta);
  if (name == "weyl-2d-b") return WeylVariant::square(WeylFamily::b, theta);
  if (name == "bcc-a-plus") return WeylVariant::bcc(WeylFamily::a_plus);
  if (name == "bcc-a-minus") return WeylVariant::bcc(WeylFamily::a_minus);
  if (name == "bcc-b-plus") return WeylVariant::bcc(WeylFamily::b_plus);
  if (name == "bcc-b-minus") return WeylVariant::bcc(WeylFamily::b_minus);
  return std::nullopt;
}

std::vector<std::string> weyl_variant_names() {
  return {"weyl-1d", "weyl-2d", "weyl-2d-b", "bcc-a-plus", "bcc-a-minus", "bcc-b-plus", "bcc-b-minus"};
}

bool is_builtin_name(std::string_view name) {
  if (name.starts_with("dirac-")) name.remove_prefix(6);
  return weyl_variant_from_name(name).has_value();
}

AutomatonDescriptor builtin_descriptor(std::string_view name, double theta, double mass) {
  const bool dirac = name.starts_with("dirac-");
  if (dirac) name.remove_prefix(6);
  const auto v = weyl_variant_from_name(name, theta);
  if (!v) throw Error("unknown built-in automaton '" + std::string(name) + "'");
  if (dirac) return dirac_descriptor({*v, mass});
  return weyl_descriptor(*v);
}

}  // namespace qca

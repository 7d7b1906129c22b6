#include "qca/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace qca {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_into(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        const bool pair = j.size() == 2;
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) out += pair || indent < 0 ? "," : ", ";
          dump_into(out, j[i], indent, depth + 1);
        }
        out += ']';
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        newline(depth + 1);
        dump_into(out, j[i], indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_into(out, j, indent, 0);
  return out;
}

namespace {

Json vector_to_json(const RealVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

RealVec vector_from_json(const Json& j) {
  RealVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

}  // namespace

Json presentation_to_json(const CayleyPresentation& p) {
  Json j;
  j["dimension"] = p.dimension();
  Json gens = Json::array();
  for (const auto& g : p.generators()) {
    gens.push_back({{"label", g.label}, {"displacement", vector_to_json(g.displacement)}, {"inverse_label", g.inverse_label}});
  }
  j["generators"] = gens;
  j["relators"] = p.relators();
  Json basis = Json::array();
  for (int i : p.free_basis()) basis.push_back(p.generators()[static_cast<std::size_t>(i)].label);
  j["free_basis"] = basis;
  Json bounds = Json::array();
  for (const auto& h : p.zone().bounds()) bounds.push_back({{"normal", vector_to_json(h.normal)}, {"offset", h.offset}});
  j["zone"] = {{"kind", to_string(p.zone().kind())}, {"bounds", bounds}};
  return j;
}

CayleyPresentation presentation_from_json(const Json& j) {
  try {
    const int d = j.at("dimension").get<int>();
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators")) {
      Generator gen;
      gen.label = g.at("label").get<std::string>();
      gen.displacement = vector_from_json(g.at("displacement"));
      gen.inverse_label = g.contains("inverse_label") ? g["inverse_label"].get<std::string>() : gen.label + "^-1";
      gens.push_back(std::move(gen));
    }
    auto relators = j.value("relators", std::vector<std::vector<long long>>{});
    std::vector<int> basis;
    if (j.contains("free_basis")) {
      for (const auto& name : j["free_basis"]) {
        const auto label = name.get<std::string>();
        int found = -1;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          if (gens[i].label == label) found = static_cast<int>(i);
        }
        if (found < 0) throw Error("free_basis names unknown generator '" + label + "'");
        basis.push_back(found);
      }
    } else {
      for (int i = 0; i < d; ++i) basis.push_back(i);
    }
    ZoneKind kind = ZoneKind::wigner_seitz;
    if (j.contains("zone")) kind = zone_kind_from_string(j["zone"].at("kind").get<std::string>());
    return CayleyPresentation(d, std::move(gens), std::move(relators), std::move(basis), kind);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed presentation: ") + e.what());
  }
}

Json matrix_to_json(const CMatrix& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  }
  return a;
}

CMatrix matrix_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows * cols)) {
    throw Error("matrix must hold " + std::to_string(rows * cols) + " [re, im] entries");
  }
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const auto& e = j[static_cast<std::size_t>(r * cols + c)];
      if (!e.is_array() || e.size() != 2) throw Error("matrix entries must be [re, im] pairs");
      m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Json descriptor_to_json(const AutomatonDescriptor& a) {
  const auto& p = a.presentation;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["presentation"] = presentation_to_json(p);
  j["internal_dim"] = a.internal_dim();
  Json mats = Json::object();
  for (const auto& [label, m] : a.rule.entries) mats[p.name(label)] = matrix_to_json(m);
  j["matrices"] = mats;
  if (a.isotropy) {
    const auto labels = p.labels();
    Json elems = Json::array();
    for (const auto& e : a.isotropy->elements) {
      Json perm = Json::array();
      for (int idx : e.permutation) perm.push_back(p.name(labels[static_cast<std::size_t>(idx)]));
      elems.push_back({{"permutation", perm}, {"unitary", matrix_to_json(e.unitary)}});
    }
    j["isotropy"] = {{"elements", elems}};
  }
  return j;
}

AutomatonDescriptor descriptor_from_json(const Json& j) {
  try {
    if (j.contains("schema_version") && j["schema_version"].get<int>() != kSchemaVersion) {
      throw Error("unsupported descriptor schema_version " + j["schema_version"].dump());
    }
    auto p = presentation_from_json(j.at("presentation"));
    const int s = j.at("internal_dim").get<int>();
    if (s < 1) throw Error("internal_dim must be positive");
    TransitionRule rule;
    rule.internal_dim = s;
    for (auto it = j.at("matrices").begin(); it != j.at("matrices").end(); ++it) {
      rule.entries[p.parse(it.key())] = matrix_from_json(it.value(), s, s);
    }
    std::optional<IsotropyGroup> iso;
    if (j.contains("isotropy") && !j["isotropy"].is_null()) {
      const auto labels = p.labels();
      IsotropyGroup g;
      for (const auto& e : j["isotropy"].at("elements")) {
        IsotropyElement el;
        for (const auto& name : e.at("permutation")) {
          const Label l = p.parse(name.get<std::string>());
          int idx = -1;
          for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == l) idx = static_cast<int>(i);
          }
          el.permutation.push_back(idx);
        }
        if (el.permutation.size() != labels.size()) throw Error("isotropy permutation must cover S");
        el.unitary = matrix_from_json(e.at("unitary"), s, s);
        g.elements.push_back(std::move(el));
      }
      iso = std::move(g);
    }
    return {std::move(p), std::move(rule), std::move(iso)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed descriptor: ") + e.what());
  }
}

AutomatonDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
  return descriptor_from_json(j);
}

void save_descriptor(const std::string& path, const AutomatonDescriptor& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << dump_json(descriptor_to_json(a)) << '\n';
}

namespace {

template <typename T>
void put(std::ostream& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw Error("truncated snapshot");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(std::ostream& out, const FieldState& state) {
  out.write("QCAS", 4);
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(state.lattice.dimension()));
  for (int n : state.lattice.sizes) put<std::uint32_t>(out, static_cast<std::uint32_t>(n));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(state.internal_dim));
  put<std::int64_t>(out, state.time);
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
    put<double>(out, state.amplitudes(i).real());
    put<double>(out, state.amplitudes(i).imag());
  }
}

FieldState read_snapshot(std::istream& in, const CayleyPresentation& p) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "QCAS", 4) != 0) throw Error("not a QCAS snapshot");
  const auto version = get<std::uint32_t>(in);
  if (version != kSnapshotVersion) throw Error("unsupported snapshot version " + std::to_string(version));
  const auto d = get<std::uint32_t>(in);
  if (static_cast<int>(d) != p.dimension()) {
    throw DimensionMismatch("snapshot dimension " + std::to_string(d) + " does not match the presentation");
  }
  std::vector<int> sizes;
  for (std::uint32_t i = 0; i < d; ++i) sizes.push_back(static_cast<int>(get<std::uint32_t>(in)));
  const auto s = static_cast<int>(get<std::uint32_t>(in));
  auto state = FieldState::zeros(LatticeSpec(p, sizes), s);
  state.time = get<std::int64_t>(in);
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    state.amplitudes(i) = cplx(re, im);
  }
  return state;
}

void save_snapshot(const std::string& path, const FieldState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  write_snapshot(out, state);
}

FieldState load_snapshot(const std::string& path, const CayleyPresentation& p) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_snapshot(in, p);
}

}  // namespace qca

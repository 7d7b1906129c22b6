#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "qca/automaton.hpp"
#include "qca/evolution.hpp"

namespace qca {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::uint32_t kSnapshotVersion = 1;

// %.17g, so every double round-trips.
std::string format_double(double x);
// JSON text with doubles printed by format_double.
std::string dump_json(const Json& j, int indent = 2);

Json presentation_to_json(const CayleyPresentation& p);
CayleyPresentation presentation_from_json(const Json& j);

// Matrices are flat row-major lists of [re, im] pairs.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, int rows, int cols);

Json descriptor_to_json(const AutomatonDescriptor& a);
AutomatonDescriptor descriptor_from_json(const Json& j);

AutomatonDescriptor load_descriptor(const std::string& path);
void save_descriptor(const std::string& path, const AutomatonDescriptor& a);

/// Binary snapshot: "QCAS", u32 version, u32 d, u32 sizes[d], u32 s,
/// i64 time, then amplitudes as little-endian f64 (re, im) pairs, site-major
/// with the internal index fastest.
void write_snapshot(std::ostream& out, const FieldState& state);
FieldState read_snapshot(std::istream& in, const CayleyPresentation& p);
void save_snapshot(const std::string& path, const FieldState& state);
FieldState load_snapshot(const std::string& path, const CayleyPresentation& p);

}  // namespace qca
